"""The brute-force oracles against hand counts, so frozen values rest on something independent."""

import numpy as np
import pytest

from cdgforge import oracles
from cdgforge.algebra import FinModule


def test_kernel_and_rank_by_enumeration():
    A = np.array([[1, 2, 0], [2, 1, 0]])  # rows proportional mod 3
    assert oracles.rank(3, A) == 1
    assert len(oracles.kernel_vectors(3, A)) == 9
    assert oracles.rank(5, np.eye(3, dtype=np.int64)) == 3


def test_enumeration_cap():
    with pytest.raises(ValueError):
        oracles.rank(3, np.zeros((2, 20), dtype=np.int64))


def test_hand_counts_over_S2(C):
    # Hom(k, k) = F, Hom(k, S2) = socle = (x), Hom(S2, S2) = S2
    assert oracles.hom_dim(C.k, C.k) == 1
    assert oracles.hom_dim(C.k, C.S2reg) == 1
    assert oracles.hom_dim(C.S2reg, C.S2reg) == 2


def test_ext_and_stable_over_S2(C):
    R, pi = C.S2reg, C.k_cover
    assert oracles.ext1_dim(C.k, C.k, R, pi) == 1
    assert oracles.ext1_dim(C.k, R, R, pi) == 0
    assert oracles.stable_hom_dim(C.k, C.k, R, pi) == 1


def test_syzygy_and_freeness(C):
    assert oracles.syzygy_isomorphic(C.k, C.S2reg, C.k_cover)
    assert not oracles.is_free_over_local(C.k, 1)
    assert oracles.is_free_over_local(C.S2reg, 1)
    assert oracles.is_free_over_local(FinModule.free(C.S2, 2), 1)


def test_cohomology_of_XK(C):
    X = C.XK
    comps = {k: X.component(k).dim for k in (-2, -1, 0, 1)}
    d = {k: X.d(k) for k in (-2, -1, 0)}
    # d^-1 = x^2 on S4: kernel and image both (x^2)
    assert oracles.cohomology_dims(3, comps, d) == {-2: 0, -1: 2, 0: 2, 1: 0}
