import numpy as np
import pytest

from cdgforge import oracles
from cdgforge.algebra import FinModule, direct_sum
from cdgforge.model import (brutal_gt, brutal_le, cohomology_dims, complete_resolution, cosyzygy,
                            gorenstein_membership, iota0, orthogonal_membership, path_object, periodic_complex,
                            q0, q0_iota_adjunction_check, right_homotopic, soft_ge, soft_le, stalk, syzygy,
                            weakly_trivial_examples_check)
from cdgforge.modules import find_isomorphism


def test_cohomology_of_periodic_complex(C):
    P = C.periodic_S2
    comps = {k: 2 for k in range(-3, 4)}
    d = {k: C.S2.left[1] for k in range(-3, 3)}
    assert cohomology_dims(P) == oracles.cohomology_dims(3, comps, d)
    assert cohomology_dims(P, -2, 2) == {k: 0 for k in range(-2, 3)}


def test_syzygies_and_truncations(C, rng):
    P = C.periodic_S2
    Z, inc = syzygy(P, 0)
    assert Z.dim == 1 and find_isomorphism(Z, C.k, rng)[0]
    Q, proj = cosyzygy(P, 0)
    assert Q.dim == 1
    assert soft_le(P, 0).dims() == {-3: 2, -2: 2, -1: 2, 0: 1}
    assert soft_ge(P, 0).dims() == {0: 1, 1: 2, 2: 2, 3: 2}
    assert brutal_le(P, 0).dims() == {k: 2 for k in range(-3, 1)}
    assert brutal_gt(P, 0).dims() == {k: 2 for k in range(1, 4)}
    assert cohomology_dims(soft_le(P, 0), -2, 0) == {-2: 0, -1: 0, 0: 0}


def test_q0_of_periodic_complex_is_k(C, rng):
    Q, _ = q0(C.periodic_S2)
    assert find_isomorphism(Q, C.k, rng)[0]


def test_z0_iota0_is_identity(C):
    for M in (C.k, C.S2reg, direct_sum(C.k, C.S2reg)):
        Z, inc = syzygy(iota0(M), 0)
        assert Z.same_as(M) and np.array_equal(inc, C.F.eye(M.dim))


def test_q0_iota_adjunction(C, rng):
    pairs = [(C.periodic_S2, C.k), (C.stalk_S2, C.k), (C.periodic_S2, C.S2reg), (stalk(C.k, 0), C.k)]
    r = q0_iota_adjunction_check(pairs, rng, 20)
    assert r["ok"] and r["round_trips"] > 0, r["failures"]


def test_path_object_k(C):
    P = path_object(C.k, C.S2reg, C.k_cover)
    assert P.PY.dim == 3
    assert P.rows_exact() == {"omega_row": True, "Y_row": True, "diagonal": True}
    with pytest.raises(ValueError):
        path_object(C.k, C.S2reg, [[0, 1]])


def test_right_homotopic(C):
    P = path_object(C.k, C.S2reg, C.k_cover)
    r = right_homotopic([[1]], [[0]], C.k, P)
    assert r == {"path_object": False, "cover": False, "agree": True, "stable": False}
    r = right_homotopic([[2]], [[2]], C.k, P)
    assert r["path_object"] and r["cover"] and r["stable"]
    # maps S2 -> k all factor through the projective S2
    P2 = path_object(C.k, C.S2reg, C.k_cover)
    r = right_homotopic([[1, 0]], [[0, 0]], C.S2reg, P2)
    assert r["path_object"] and r["agree"] and r["stable"]


def test_complete_resolution_of_k(C):
    X, reason = complete_resolution(C.k, 3)
    assert reason == "" and X is not None
    assert cohomology_dims(X, -1, 2) == {k: 0 for k in range(-1, 3)}


@pytest.mark.parametrize("name", ["k", "S2reg", "sum"])
def test_gorenstein_over_S2(C, name):
    M = direct_sum(C.k, C.S2reg) if name == "sum" else getattr(C, name)
    g = gorenstein_membership(C.S2, M, 3)
    assert g["gorenstein_projective"] == "yes" and g["gorenstein_injective"] == "yes"
    assert g["finite_pd"] == ("pd=0" if name == "S2reg" else "pd=inf")


def test_gorenstein_witness_for_k(C):
    w = gorenstein_membership(C.S2, C.k, 3)["witness"]
    assert w.components_projective and w.exact_interior and w.q0_iso
    assert w.period is not None and 2 % w.period == 0


def test_gorenstein_semisimple(C):
    R = C.F1
    for M in (FinModule.regular(R), FinModule.free(R, 2)):
        g = gorenstein_membership(R, M, 2)
        assert g["finite_pd"] == "pd=0" and g["gorenstein_projective"] == "yes"
    with pytest.raises(ValueError):
        gorenstein_membership(R, C.k, 2)
    with pytest.raises(ValueError):
        gorenstein_membership(C.S2, C.k, 0)


def test_orthogonal_membership(C):
    r = orthogonal_membership([C.S2reg], C.k)
    assert r["verdict"] and r["pairs"] == [{"against": "S2", "ext1": 0}]
    r = orthogonal_membership([C.S2reg, C.k], C.k)
    assert not r["verdict"]
    # growing the list can only shrink the orthogonal
    for M in (C.k, C.S2reg):
        small = orthogonal_membership([C.S2reg], M, "left")["verdict"]
        big = orthogonal_membership([C.S2reg, C.k], M, "left")["verdict"]
        assert small or not big
    with pytest.raises(ValueError):
        orthogonal_membership([C.k], C.k, "up")


def test_weakly_trivial(C):
    P = C.periodic_S2
    assert weakly_trivial_examples_check(P, stalk(C.S2reg, 2), (-3, 3))["verdict"] is True
    zero = weakly_trivial_examples_check(P, stalk(FinModule.zero(C.S2), 0), (-3, 3))
    assert zero["verdict"] is True
    T = soft_le(P, 0)
    assert weakly_trivial_examples_check(P, T, (-5, 3))["verdict"] is True


def test_weakly_trivial_refuses_narrow_window(C):
    r = weakly_trivial_examples_check(C.periodic_S2, soft_le(C.periodic_S2, 0), (-3, 3))
    assert r["verdict"] is None and r["refused"].startswith("window insufficient")


def test_periodic_complex_rejects_nonzero_square(C):
    with pytest.raises(ValueError):
        periodic_complex(C.S2reg, C.F.eye(2), 0, 2)
