from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cdgforge import _kernels
from cdgforge.field import Field
from cdgforge import oracles

PRIMES = [2, 3, 5, 7, 101]


def matrices(max_side=6):
    return st.tuples(st.sampled_from(PRIMES), st.integers(1, max_side), st.integers(1, max_side), st.integers(0, 2**31))


def _random(p, r, c, seed):
    return np.random.default_rng(seed).integers(0, p, size=(r, c))


def test_rejects_composite_and_accepts_zero():
    with pytest.raises(ValueError):
        Field(6)
    Q = Field(0)
    assert not Q.is_finite
    assert Q.inv_scalar(Fraction(2, 3)) == Fraction(3, 2)


def test_sign_and_reduce():
    F = Field(3)
    assert F.sign(1) == 2 and F.sign(2) == 1
    assert np.array_equal(F.reduce(np.array([-1, 4, 3])), [2, 1, 0])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity_and_nullspace(args):
    p, r, c, seed = args
    F = Field(p)
    A = F.array(_random(p, r, c, seed))
    N = F.nullspace(A)
    assert F.rank(A) + N.shape[1] == c
    assert F.is_zero(F.mul(A, N))
    L = F.left_nullspace(A)
    assert L.shape[0] + F.rank(A) == r
    assert F.is_zero(F.mul(L, A))


@settings(max_examples=40, deadline=None)
@given(matrices(4))
def test_rank_matches_brute_force(args):
    p, r, c, seed = args
    if p ** c > 5000:
        p = 3
    F = Field(p)
    A = F.array(_random(p, r, c, seed))
    assert F.rank(A) == oracles.rank(p, A)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_solve_consistent_and_inconsistent(args):
    p, r, c, seed = args
    F = Field(p)
    rng = np.random.default_rng(seed)
    A = F.array(_random(p, r, c, seed))
    x = F.random((c, 2), rng)
    b = F.mul(A, x)
    y = F.solve(A, b)
    assert y is not None and F.equal(F.mul(A, y), b)
    if F.rank(A) < r:
        # a vector outside the column space has no solution
        comp = F.complement_columns(F.column_basis(A), r)
        assert F.solve(A, comp[:, :1]) is None


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PRIMES), st.integers(1, 6), st.integers(0, 2**31))
def test_inverse(p, n, seed):
    F = Field(p)
    A = F.array(_random(p, n, n, seed))
    if F.is_invertible(A):
        assert F.equal(F.mul(A, F.inverse(A)), F.eye(n))
    else:
        with pytest.raises(ValueError):
            F.inverse(A)


def test_rationals_exact():
    Q = Field(0)
    A = Q.array([[1, 2], [3, 4]])
    Ainv = Q.inverse(A)
    assert Ainv[0, 0] == Fraction(-2) and Ainv[1, 0] == Fraction(3, 2)
    assert Q.rank(Q.array([[1, 2], [2, 4]])) == 1


def test_coords_raises_outside_span():
    F = Field(3)
    with pytest.raises(ValueError):
        F.coords(F.array([[1], [0]]), F.array([[0], [1]]))
    assert F.in_span(F.array([[1], [1]]), F.array([[2], [2]]))


@settings(max_examples=40, deadline=None)
@given(matrices(12))
def test_numba_and_numpy_kernels_agree(args):
    p, r, c, seed = args
    A = _random(p, r, c, seed)
    r1, p1 = _kernels.rref_modp_numpy(A, p)
    if _kernels.HAVE_NUMBA:
        r2, p2 = _kernels.rref_modp_numba(A, p)
        assert np.array_equal(r1, r2) and list(p1) == list(p2)


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv(_kernels.DISABLE_ENV, "1")
    assert not _kernels.numba_enabled()
    monkeypatch.delenv(_kernels.DISABLE_ENV)
    assert _kernels.numba_enabled() == _kernels.HAVE_NUMBA
