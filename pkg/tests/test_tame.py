import numpy as np
import pytest

from cdgforge.mixed import sbar
from cdgforge.tame import TameComplex, is_acyclic_on, window_eval


def _constant(C, m):
    """S2 in every degree, w = 0 and d = s = m."""
    comps = {n: C.S2reg for n in range(-2, 3)}
    return TameComplex(C.S2, [0, 0], -2, 2, comps, {n: m for n in range(-2, 2)}, {n: m for n in range(-1, 3)},
                       "constant", "constant", name="const")


def test_window_eval_agrees_on_overlap(C):
    T = sbar(C.D1)
    A = window_eval(T, -7, 3)
    B = window_eval(T, -1, 9)
    for n in range(-1, 3):
        assert A.comps[n].same_as(B.comps[n])
        assert np.array_equal(A.d[n], B.d[n])
    for n in range(0, 4):
        assert np.array_equal(A.s[n], B.s[n])


def test_periodic_extension_repeats(C):
    T = sbar(C.D1)
    for n in range(-12, 12):
        assert np.array_equal(T.d(n), T.d(n + 2))
    assert T.check(-10, 10) == []


def test_constant_ends(C):
    x = C.S2.left[1]
    T = _constant(C, x)
    assert T.component(100).dim == 2 and T.check(-20, 20) == []
    assert np.array_equal(T.d(-50), x)


def test_zero_ends(C):
    comps = {0: C.S4reg}
    T = TameComplex(C.S4, np.zeros(4, dtype=np.int64), 0, 0, comps, {}, {})
    assert T.component(1).dim == 0 and T.d(0).shape == (0, 4)


def test_malformed_descriptor(C):
    R = C.S4reg
    with pytest.raises(ValueError, match="malformed"):
        TameComplex(C.S4, C.w, 0, 1, {0: R, 1: R}, {0: C.x_power(1)}, {1: C.x_power(1)}, "spiral")
    with pytest.raises(ValueError, match="missing"):
        TameComplex(C.S4, C.w, 0, 1, {0: R}, {}, {})
    with pytest.raises(ValueError, match="window too short"):
        TameComplex(C.S4, C.w, 0, 1, {0: R, 1: R}, {0: C.x_power(1)}, {1: C.x_power(1)}, "periodic2")


def test_laws_violation_detected(C):
    R = C.S4reg
    comps = {n: R for n in range(-2, 3)}
    with pytest.raises(ValueError, match="invalid"):
        TameComplex(C.S4, C.w, -2, 2, comps, {n: C.x_power(1) for n in range(-2, 2)},
                    {n: C.x_power(3) for n in range(-1, 3)}, "constant", "constant")


def test_acyclicity(C):
    ok, h = is_acyclic_on(sbar(C.D1), -6, 6)
    assert ok and set(h.values()) == {0}
    ok, h = is_acyclic_on(_constant(C, C.S2.left[1]), -4, 4)
    assert ok  # ker x = im x on S2
    ok, h = is_acyclic_on(_constant(C, C.F.zeros((2, 2))), -4, 4)
    assert not ok and set(h.values()) == {2}


def test_stalk_k_not_acyclic(C):
    comps = {0: C.k}
    T = TameComplex(C.S2, np.zeros(2, dtype=np.int64), 0, 0, comps, {}, {}, validate=False)
    ok, h = is_acyclic_on(T, -1, 1)
    assert not ok and h == {0: 1}


def test_acyclicity_requires_complex(C):
    R = C.S4reg
    x = C.x_power(1)
    comps = {n: R for n in range(0, 3)}
    T = TameComplex(C.S4, C.w, 0, 2, comps, {0: x, 1: x}, {1: x, 2: x}, validate=False)
    with pytest.raises(ValueError, match="d\\^2"):
        is_acyclic_on(T, 0, 3)
