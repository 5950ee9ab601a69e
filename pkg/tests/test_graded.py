import pytest

from cdgforge.graded import (CdgModule, CdgRing, GradedModule, cdg_ext1, cone_id, dg_hom, g_minus, g_plus,
                             gplus_counit, gplus_unit, homotopy_classes, is_cdg_injective, is_cdg_projective,
                             is_contractible, is_morphism, suspend, validate_cdg_module)
from cdgforge.model import stalk


def test_koszul_and_curved_rings(C):
    K, Sw = C.K, C.Sw
    assert K.dim == 8 and K.check() == []
    assert sorted(int(d) for d in K.degrees) == [-1] * 4 + [0] * 4
    assert not K.curvature.any()
    assert Sw.dim == 4 and Sw.check() == []
    assert list(Sw.curvature) == [0, 0, 1, 0]


def test_ring_as_dg(C):
    R = CdgRing.ring_as_dg(C.S2)
    assert R.check() == [] and not R.diff.any() and not R.curvature.any()


def test_regular_module_valid(C):
    X = C.XK_cdg
    assert X.dims() == {-1: 4, 0: 4}
    assert validate_cdg_module(X) == []


def test_validate_reports_leibniz_cells(C):
    X = C.XK_cdg
    F = C.F
    diff = X.diff.copy()
    idx = X.indices(-1)
    diff[:, idx] = F.reduce(-diff[:, idx])
    bad = CdgModule(X.ring, X.degrees, X.action, diff, validate=False)
    report = validate_cdg_module(bad)
    assert report and all(r.startswith("leibniz") for r in report)
    with pytest.raises(ValueError):
        CdgModule(X.ring, X.degrees, X.action, diff)


def test_suspend_composition(C):
    for X in C.cdg_list():
        for m in range(-2, 3):
            for n in range(-2, 3):
                assert suspend(suspend(X, m), n).equals(suspend(X, m + n))
        assert suspend(X, 0).equals(X)
        assert validate_cdg_module(suspend(X, 3)) == []


def test_g_plus_of_stalk_k_is_cone_of_identity(C):
    G = g_plus(C.graded_k(0))
    assert G.dims() == {0: 1, 1: 1}
    assert validate_cdg_module(G) == []
    assert is_contractible(G)[0]
    assert validate_cdg_module(g_minus(C.graded_k(0))) == []


def test_g_plus_over_curved_ring(C):
    Z = GradedModule(C.Sw, [0], [[[1]], [[0]], [[0]], [[0]]])  # S4 / (x)
    G = g_plus(Z)
    assert validate_cdg_module(G) == []


def test_gplus_unit_counit_triangle(C):
    X = C.XK_cdg
    F = C.F
    eps = gplus_counit(X)
    assert is_morphism(eps, g_plus(X.sharp()), X)
    eta = gplus_unit(X.sharp())
    assert F.equal(F.mul(eps, eta), F.eye(X.dim))


def test_cone_id(C):
    for X in C.cdg_list():
        Cn, epi, h = cone_id(X)
        F = X.field
        assert validate_cdg_module(Cn) == []
        assert is_morphism(epi, Cn, X)
        dh = F.add(F.mul(Cn.diff, h), F.mul(h, Cn.diff))
        assert F.equal(dh, F.eye(Cn.dim))
        assert homotopy_classes(Cn, Cn, 0)[0] == 0


def test_dg_hom_XK(C):
    H = dg_hom(C.XK_cdg, C.XK_cdg)
    assert H.dims() == {-1: 4, 0: 4, 1: 0}
    assert H.d_squared_zero()
    # End(K) = K, so [K, K] = H^0(K) = S4 / (x^2): dimension 2 by hand
    assert homotopy_classes(C.XK_cdg, C.XK_cdg, 0)[0] == 2


def test_stalk_k_maps_to_its_suspension_are_null(C):
    X = C.stalk_k
    assert homotopy_classes(X, suspend(X, 1), 0)[0] == 0
    assert homotopy_classes(X, X, 0)[0] == 1


def test_ring_mismatch_raises(C):
    with pytest.raises(ValueError):
        dg_hom(C.XK_cdg, C.stalk_k)


def test_contractibility(C):
    assert not is_contractible(C.XK_cdg)[0]
    assert not is_contractible(C.stalk_k)[0]
    assert is_contractible(CdgModule.zero(C.K))[0]
    ok, h = is_contractible(cone_id(C.stalk_S2)[0])
    assert ok and h is not None


def test_cdg_projective_injective(C):
    Cn = cone_id(C.stalk_S2)[0]
    assert is_cdg_projective(Cn) and is_cdg_injective(Cn)
    assert not is_cdg_projective(cone_id(C.stalk_k)[0])
    assert not is_cdg_projective(C.XK_cdg)


@pytest.mark.parametrize("pair,expected", [
    (("XK", "XK"), 0), (("K_stalk", "K_stalk"), 0), (("sXK", "XK"), 2),
    (("D1", "D1"), 2), (("S2", "S2"), 0),
])
def test_cdg_ext1_matches_homotopy_classes(C, pair, expected):
    # with projective underlying module, Ext^1 in the abelian category equals [X, S Y]
    objs = {"XK": C.XK_cdg, "K_stalk": C.induced_stalk.to_cdg(), "sXK": C.XK.suspend(1).to_cdg(),
            "D1": C.D1.to_cdg(), "S2": C.stalk_S2}
    X, Y = objs[pair[0]], objs[pair[1]]
    assert cdg_ext1(X, Y) == homotopy_classes(X, Y, 1)[0] == expected


def test_cone_stabilisation_preserves_homotopy_classes(C):
    X = C.XK_cdg
    from cdgforge.graded import graded_direct_sum
    Y = graded_direct_sum(X, cone_id(X)[0])
    assert homotopy_classes(Y, Y, 0)[0] == homotopy_classes(X, X, 0)[0]


def test_stalk_helper(C):
    X = stalk(C.k, 2)
    assert X.dims() == {2: 1}
