import pytest

from cdgforge import oracles
from cdgforge.mixed import (Duplex, MixedComplex, alpha_epi, bar_complex, check_duplex, check_mixed,
                            completed_bar, completed_bar_crosscheck, counit_factorization_check, counit_prod,
                            duplex_morphisms, fold, is_duplex_morphism, is_tame_morphism,
                            mixed_model_class_test, sbar, transpose_prod_from_fold, transpose_prod_to_fold,
                            transpose_sum_from_sbar, transpose_sum_to_sbar)
from cdgforge.randomgen import random_duplex, random_mixed_complex
from cdgforge.verify import MUTATIONS


def test_corpus_objects_valid(C):
    for X in C.mixed_list():
        assert check_mixed(X) == []
    assert check_duplex(C.D1) == []


def test_bad_duplex_reported(C):
    problems = check_duplex(C.D_bad)
    assert problems and all(p.startswith(("fg", "gf")) for p in problems)
    with pytest.raises(ValueError):
        Duplex(C.S4, C.w, C.S4reg, C.S4reg, C.x_power(1), C.x_power(3))


def test_bad_mixed_complex_reported(C):
    R = C.S4reg
    with pytest.raises(ValueError):
        MixedComplex(C.S4, C.w, {-1: R, 0: R}, {-1: C.x_power(1)}, {0: C.F.eye(4)})


def test_fold_XK(C):
    M = fold(C.XK)
    F = C.F
    # f: X^0 -> X^-1 is s = id, g: X^-1 -> X^0 is d = w
    assert F.equal(M.f, F.eye(4))
    assert F.equal(M.g, C.x_power(2))
    assert fold(C.XK, "sum").equals(M)
    with pytest.raises(ValueError):
        fold(C.XK, "coproduct")


def test_fold_random_curvature(C, rng):
    F = C.F
    for _ in range(10):
        M = fold(random_mixed_complex(C.S4, C.w, rng))
        assert F.equal(F.mul(M.f, M.g), M.M1.act(C.w))
        assert F.equal(F.mul(M.g, M.f), M.M0.act(C.w))


def test_sbar_D1_matrices(C):
    T = sbar(C.D1)
    F = C.F
    x, x2, one = C.x_power(1), C.x_power(2), F.eye(4)
    expected = F.block([[x, x2], [F.reduce(-one), F.reduce(-x)]])
    for n in range(-3, 4):
        assert F.equal(T.d(n), expected)
    assert T.check(-6, 6) == []


def test_sbar_random(C, rng):
    for _ in range(5):
        T = sbar(random_duplex(C.S4, C.w, rng))
        assert T.check(-4, 4) == []


def test_completed_bar_XK(C):
    B = completed_bar(C.XK)
    assert (B.lo, B.hi) == (-6, 1)
    assert B.below == "periodic2" and B.above == "zero"
    dims = {n: B.component(n).dim for n in range(-8, 3)}
    assert dims == {**{n: 8 for n in range(-8, 0)}, 0: 4, 1: 0, 2: 0}


def test_totalization_crosscheck_and_mutations(C):
    assert completed_bar_crosscheck(C.XK)["equal"]
    for name, sign in MUTATIONS.items():
        assert not completed_bar_crosscheck(C.XK, sign=sign)["equal"], name


def test_alpha_epi_XK(C):
    A = alpha_epi(C.XK)
    assert A.surjective and A.is_morphism and A.kernel_dims_ok
    assert [f["verdict"] for f in A.filtration] == [True, True, True]
    assert A.kernel.component(0).dim == 4  # prod_{k<0} X^k = X^-1


def test_alpha_epi_zero(C):
    A = alpha_epi(MixedComplex.zero(C.S4, C.w))
    assert A.surjective and A.is_morphism


def test_counit_factorization(C):
    for X in C.mixed_list():
        assert counit_factorization_check(X)
    # S2 stalk with w = 0
    X = MixedComplex(C.S2, [0, 0], {0: C.S2reg}, name="S2[0]")
    assert counit_factorization_check(X)


def test_bar_complex(C):
    bc = bar_complex(C.XK, 3)
    assert bc.term_dims() == [2 * C.XK.total_dim] * 4
    assert bc.composites_vanish(-6, 6)
    assert bc.is_acyclic_on(-4, 2)
    with pytest.raises(ValueError):
        bar_complex(C.XK, -1)


def test_model_classes_XK(C):
    r = mixed_model_class_test(C.XK)
    assert r["ctr_sing_cofibrant"]
    X = C.XK
    comps = {k: X.component(k).dim for k in (-2, -1, 0, 1)}
    d = {k: X.d(k) for k in (-2, -1, 0)}
    expected = oracles.cohomology_dims(3, comps, d)
    assert r["cohomology"] == expected == {-2: 0, -1: 2, 0: 2, 1: 0}
    assert r["ctr_sing_fibrant_abs"] is False


def test_model_classes_induced(C):
    assert mixed_model_class_test(C.induced_stalk)["ctr_sing_cofibrant"]
    z = mixed_model_class_test(MixedComplex.zero(C.S4, C.w))
    assert z["ctr_sing_cofibrant"] and z["ctr_sing_fibrant_abs"]


def test_prod_adjunction_round_trip(C):
    X = C.XK
    Xf = fold(X)
    F = C.F
    eps = counit_prod(X)
    phi0, phi1 = transpose_prod_to_fold(eps, Xf, X, Xf)
    assert F.equal(phi0, F.eye(Xf.M0.dim)) and F.equal(phi1, F.eye(Xf.M1.dim))
    assert is_tame_morphism(eps, sbar(Xf), X, -4, 2)
    back = transpose_prod_from_fold(phi0, phi1, Xf, X, Xf)
    assert all(F.equal(back[n], eps[n]) for n in eps)


def test_sum_adjunction_round_trip(C):
    X = C.XK
    M = C.D1
    F = C.F
    for phi0, phi1 in duplex_morphisms(fold(X), M):
        assert is_duplex_morphism(phi0, phi1, fold(X), M)
        psi = transpose_sum_to_sbar(phi0, phi1, X, M)
        b0, b1 = transpose_sum_from_sbar(psi, X, M)
        assert F.equal(b0, phi0) and F.equal(b1, phi1)


def test_duplex_suspend_involution(C):
    M = C.D1
    assert M.suspend().suspend().equals(M)
