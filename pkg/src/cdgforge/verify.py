"""Verification suites.  Each suite emits one record per assertion.

A record is ``{id, status, lhs_dims, rhs_dims, witness_present}`` where
``status`` is ``pass``, ``fail`` or ``refused``.  Randomized suites draw from
``default_rng([seed, suite index])`` so a suite gives the same records whether
it runs alone or inside ``all``.
"""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field

import numpy as np

from . import oracles
from .algebra import FinModule, combine, direct_sum
from .corpus import Corpus
from .graded import (cone_id, g_minus, g_plus, gminus_counit, gminus_to_sharp, gminus_unit, gplus_counit,
                     gplus_to_sharp, gplus_unit, graded_hom, dg_hom, homotopy_classes, is_morphism,
                     morphism_space, sharp_to_gminus, sharp_to_gplus, suspend, validate_cdg_module)
from .mixed import (alpha_epi, bar_complex, check_mixed, completed_bar_crosscheck,
                    counit_factorization_check, duplex_morphisms, fold, is_tame_morphism, sbar,
                    transpose_prod_from_fold, transpose_prod_to_fold, transpose_sum_from_sbar,
                    transpose_sum_to_sbar)
from .model import (cohomology_dims, gorenstein_membership, path_object, q0_iota_adjunction_check,
                    right_homotopic)
from .modules import ext1, projective_resolution, stable_hom
from .randomgen import random_duplex, random_graded_module, random_mixed_complex

log = logging.getLogger(__name__)

SUITES = ("curvature", "sbar", "adjunction", "bar", "gpm", "gorenstein", "homotopy", "signs")
DEFAULT_COUNTS = {"curvature": 50, "sbar": 20, "adjunction": 20, "gpm": 20}
DEFAULT_WINDOWS = {"sbar": (-4, 4), "bar": (-6, 6)}


class WindowInsufficient(Exception):
    pass


@dataclass
class Options:
    seed: int = 7
    random_count: int | None = None
    window: tuple | None = None

    def count(self, suite: str) -> int:
        return self.random_count if self.random_count is not None else DEFAULT_COUNTS[suite]

    def window_for(self, suite: str) -> tuple:
        return tuple(self.window) if self.window is not None else DEFAULT_WINDOWS[suite]


@dataclass
class Report:
    records: list = field(default_factory=list)

    def check(self, id_: str, ok: bool, lhs=(), rhs=(), witness: bool = False, status: str | None = None):
        rec = {"id": id_, "status": status or ("pass" if ok else "fail"),
               "lhs_dims": [int(v) for v in lhs], "rhs_dims": [int(v) for v in rhs],
               "witness_present": bool(witness)}
        self.records.append(rec)
        if rec["status"] != "pass":
            log.info("%s: %s", id_, rec["status"])
        return ok

    @property
    def failures(self) -> list:
        return [r for r in self.records if r["status"] != "pass"]

    def summary(self) -> dict:
        out = {}
        for r in self.records:
            suite = r["id"].split("/", 1)[0]
            s = out.setdefault(suite, {"pass": 0, "fail": 0, "refused": 0})
            s[r["status"]] = s.get(r["status"], 0) + 1
        return out

    def dumps(self) -> str:
        """One record per line, keys sorted, so equal runs give equal bytes."""
        body = ",\n".join(" " + json.dumps(r, sort_keys=True) for r in self.records)
        return "[\n" + body + "\n]\n" if body else "[]\n"


def _rng(opts: Options, suite: str) -> np.random.Generator:
    return np.random.default_rng([opts.seed, SUITES.index(suite)])


def _random_element(F, basis, rng):
    return combine(F, F.random(basis.shape[0], rng), basis)


# -- 1. curvature -----------------------------------------------------------------------

def suite_curvature(C: Corpus, opts: Options, rep: Report):
    F = C.F
    rng = _rng(opts, "curvature")
    objs = [(X.name, X) for X in C.mixed_list()]
    objs += [(f"random{t:03d}", random_mixed_complex(C.S4, C.w, rng)) for t in range(opts.count("curvature"))]
    for name, X in objs:
        valid = not check_mixed(X)
        M = fold(X, "product")
        fg, gf = F.mul(M.f, M.g), F.mul(M.g, M.f)
        rep.check(f"curvature/{name}/fg", valid and F.equal(fg, M.M1.act(C.w)), fg.shape, (M.M1.dim, M.M1.dim))
        rep.check(f"curvature/{name}/gf", valid and F.equal(gf, M.M0.act(C.w)), gf.shape, (M.M0.dim, M.M0.dim))


# -- 2. sbar laws -----------------------------------------------------------------------

def suite_sbar(C: Corpus, opts: Options, rep: Report):
    rng = _rng(opts, "sbar")
    lo, hi = opts.window_for("sbar")
    objs = [("D1", C.D1)] + [(f"random{t:03d}", random_duplex(C.S4, C.w, rng))
                             for t in range(opts.count("sbar"))]
    for name, D in objs:
        T = sbar(D)
        problems = T.check(lo, hi)
        dims = [T.component(n).dim for n in range(lo, hi + 1)]
        for law, prefix in (("d2", "d^2"), ("s2", "s^2"), ("ds+sd", "ds + sd"), ("linear", "linearity")):
            bad = [p for p in problems if p.startswith(prefix) or p.startswith("shape")]
            rep.check(f"sbar/{name}/{law}", not bad, dims, dims)


# -- 3. adjunctions ---------------------------------------------------------------------

def _sbar_morphism(psi: dict, X, T, lo: int, hi: int) -> bool:
    """``psi: X -> T`` for a mixed complex ``X`` and a tame complex ``T``."""
    F = X.field
    get = lambda n: psi.get(n, F.zeros((T.component(n).dim, X.component(n).dim)))  # noqa: E731
    for n in range(lo, hi + 1):
        if not F.equal(F.mul(T.d(n), get(n)), F.mul(get(n + 1), X.d(n))):
            return False
        if not F.equal(F.mul(T.s(n), get(n)), F.mul(get(n - 1), X.s(n))):
            return False
    return True


def _random_duplex_morphism(M, N, rng):
    F = M.field
    basis = duplex_morphisms(M, N)
    if not basis:
        return None
    c = F.random(len(basis), rng)
    phi0 = F.reduce(sum(int(ci) * b[0] for ci, b in zip(c, basis)))
    phi1 = F.reduce(sum(int(ci) * b[1] for ci, b in zip(c, basis)))
    return phi0, phi1


def _pairs_with_maps(C: Corpus, rng, count: int, direction: str):
    """Random ``(X, M, phi)`` with a nonzero duplex map between ``fold X`` and ``M`` when one exists."""
    out = []
    while len(out) < count:
        X = random_mixed_complex(C.S4, C.w, rng)
        M = random_duplex(C.S4, C.w, rng)
        Xf = fold(X)
        phi = _random_duplex_morphism(M, Xf, rng) if direction == "prod" else _random_duplex_morphism(Xf, M, rng)
        if phi is not None:
            out.append((X, M, Xf, phi))
    return out


def suite_adjunction(C: Corpus, opts: Options, rep: Report):
    F = C.F
    rng = _rng(opts, "adjunction")
    n = opts.count("adjunction")
    # sbar -| fold_prod
    for t, (X, M, Xf, (p0, p1)) in enumerate(_pairs_with_maps(C, rng, n, "prod")):
        T = sbar(M)
        alpha = transpose_prod_from_fold(p0, p1, M, X, Xf)
        ok_morph = is_tame_morphism(alpha, T, X, X.lo - 1, X.hi + 1)
        b0, b1 = transpose_prod_to_fold(alpha, M, X, Xf)
        rep.check(f"adjunction/prod/{t:03d}/morphism", ok_morph, p0.shape, p1.shape, witness=True)
        rep.check(f"adjunction/prod/{t:03d}/round_trip", F.equal(b0, p0) and F.equal(b1, p1),
                  b0.shape + b1.shape, p0.shape + p1.shape, witness=True)
    # fold_sum -| sbar o S
    for t, (X, M, Xf, (p0, p1)) in enumerate(_pairs_with_maps(C, rng, n, "sum")):
        T = sbar(M.suspend())
        psi = transpose_sum_to_sbar(p0, p1, X, M, Xf)
        ok_morph = _sbar_morphism(psi, X, T, X.lo - 1, X.hi + 1)
        b0, b1 = transpose_sum_from_sbar(psi, X, M, Xf)
        rep.check(f"adjunction/sum/{t:03d}/morphism", ok_morph, p0.shape, p1.shape, witness=True)
        rep.check(f"adjunction/sum/{t:03d}/round_trip", F.equal(b0, p0) and F.equal(b1, p1),
                  b0.shape + b1.shape, p0.shape + p1.shape, witness=True)
    # G+ -| # -| G- over the dg ring of S2
    targets = [C.stalk_k, C.stalk_S2, C.periodic_S2, cone_id(C.stalk_k)[0]]
    for t in range(n):
        Z = random_graded_module(C.dgS2, [C.k, C.S2reg], rng)
        X = targets[t % len(targets)]
        _gpm_adjunction_checks(F, Z, X, rng, rep, f"adjunction/gpm/{t:03d}")
    # Q0 -| iota0
    pairs = [(C.periodic_S2, C.k), (C.stalk_k, C.S2reg), (C.periodic_S2, C.S2reg), (C.stalk_S2, C.k),
             (cone_id(C.stalk_k)[0], C.k)]
    for t in range(n):
        res = q0_iota_adjunction_check([pairs[t % len(pairs)]], rng, 1)
        rep.check(f"adjunction/q0/{t:03d}", res["ok"], [res["round_trips"]], [res["round_trips"]], witness=True)


def _gpm_adjunction_checks(F, Z, X, rng, rep: Report, prefix: str):
    Xs = X.sharp()
    Gp, Gm = g_plus(Z), g_minus(Z)
    n = Z.dim
    # hom-set bijection G+(Z) -> X  <->  Z -> X#
    B = graded_hom(Z, Xs, 0)
    psi = _random_element(F, B, rng) if B.shape[0] else F.zeros((X.dim, n))
    phi = sharp_to_gplus(psi, X)
    ok = is_morphism(phi, Gp, X) and F.equal(gplus_to_sharp(phi, Z), psi)
    M = morphism_space(Gp, X)
    if M.shape[0]:
        phi2 = _random_element(F, M, rng)
        ok = ok and F.equal(sharp_to_gplus(gplus_to_sharp(phi2, Z), X), phi2)
    rep.check(f"{prefix}/plus_round_trip", ok, psi.shape, phi.shape, witness=True)
    # hom-set bijection X -> G-(Z)  <->  X# -> Z
    B = graded_hom(Xs, Z, 0)
    psi = _random_element(F, B, rng) if B.shape[0] else F.zeros((n, X.dim))
    phi = sharp_to_gminus(psi, X)
    ok = is_morphism(phi, X, Gm) and F.equal(gminus_to_sharp(phi, Z), psi)
    M = morphism_space(X, Gm)
    if M.shape[0]:
        phi2 = _random_element(F, M, rng)
        ok = ok and F.equal(sharp_to_gminus(gminus_to_sharp(phi2, Z), X), phi2)
    rep.check(f"{prefix}/minus_round_trip", ok, psi.shape, phi.shape, witness=True)
    # triangles for G+ -| #: eps_X# o eta_X# = id, eps_G+Z o G+(eta_Z) = id
    t1 = F.mul(gplus_counit(X), gplus_unit(Xs))
    eta = gplus_unit(Z)
    t2 = F.mul(gplus_counit(Gp), F.direct_sum(eta, eta))
    rep.check(f"{prefix}/plus_triangles", F.equal(t1, F.eye(X.dim)) and F.equal(t2, F.eye(2 * n)),
              t1.shape + t2.shape, (X.dim, X.dim, 2 * n, 2 * n))
    # triangles for # -| G-: eps_X# o eta_X# = id, G-(eps_Z) o eta_G-Z = id
    s1 = F.mul(gminus_counit(Xs), gminus_unit(X))
    eps = gminus_counit(Z)
    s2 = F.mul(F.direct_sum(eps, eps), gminus_unit(Gm))
    rep.check(f"{prefix}/minus_triangles", F.equal(s1, F.eye(X.dim)) and F.equal(s2, F.eye(2 * n)),
              s1.shape + s2.shape, (X.dim, X.dim, 2 * n, 2 * n))


# -- 4. bar resolutions -----------------------------------------------------------------

def bar_window_needed(X) -> tuple:
    return (X.lo - 2, X.hi + 1)


def suite_bar(C: Corpus, opts: Options, rep: Report):
    rng = _rng(opts, "bar")
    lo, hi = opts.window_for("bar")
    X = C.XK
    need = bar_window_needed(X)
    if lo > need[0] or hi < need[1]:
        rep.check("bar/X_K/acyclic", False, [lo, hi], list(need), status="refused")
        raise WindowInsufficient(f"window insufficient: bar suite needs [{need[0]}, {need[1]}] "
                                 f"inside the window, got [{lo}, {hi}]")
    depth = X.hi - lo + 2
    B = bar_complex(X, depth)
    ex = B.exactness(lo, hi)
    rep.check("bar/X_K/composites_vanish", B.composites_vanish(lo, hi), [depth], [depth])
    rep.check("bar/X_K/acyclic", all(v == 0 for v in ex.values()), [len(ex)], [sum(ex.values())])
    for Y in C.mixed_list() + [C.XK.suspend(1), C.XK.suspend(-3)]:
        cc = completed_bar_crosscheck(Y)
        w = cc["window"]
        rep.check(f"bar/{Y.name}/closed_form", cc["equal"], w, [len(cc["mismatches"])])
        rep.check(f"bar/{Y.name}/counit_factorization", counit_factorization_check(Y), w, w)
    A = alpha_epi(X, depth=2, rng=rng)
    rep.check("bar/X_K/alpha_surjective", A.surjective, A.window, A.window)
    rep.check("bar/X_K/alpha_morphism", A.is_morphism, A.window, A.window)
    rep.check("bar/X_K/kernel_dims", A.kernel_dims_ok, [A.kernel.lo, A.kernel.hi], A.window)
    for f in A.filtration:
        Q, T = f["quotient"], f["model"]
        rep.check(f"bar/X_K/filtration_{f['n']}", f["verdict"] is True and f["iso"] is not None,
                  [Q.total_dim], [T.total_dim], witness=f["iso"] is not None)


# -- 5. G+ and G- are acyclic ----------------------------------------------------------

def suite_gpm(C: Corpus, opts: Options, rep: Report):
    rng = _rng(opts, "gpm")
    for t in range(opts.count("gpm")):
        Z = random_graded_module(C.dgS2, [C.k, C.S2reg], rng)
        for label, G in (("plus", g_plus(Z)), ("minus", g_minus(Z))):
            valid = not validate_cdg_module(G)
            h = cohomology_dims(G)
            rep.check(f"gpm/{t:03d}/{label}", valid and all(v == 0 for v in h.values()),
                      [G.dim], [sum(h.values())])


# -- 6. Gorenstein ---------------------------------------------------------------------

def suite_gorenstein(C: Corpus, opts: Options, rep: Report):
    rng = _rng(opts, "gorenstein")
    k, R, pi = C.k, C.S2reg, C.k_cover
    res = projective_resolution(k, max_steps=3, rng=rng)
    rep.check("gorenstein/pd_k", res.verdict == "pd=inf" and res.repeat is not None and res.repeat[1] <= 3,
              [len(res.syzygies)], list(res.repeat or ()), witness=res.repeat is not None)
    oracle_inf = oracles.syzygy_isomorphic(k, R, pi) and not oracles.is_free_over_local(k, 1)
    rep.check("gorenstein/pd_k_oracle", oracle_inf == (res.verdict == "pd=inf"), [], [])
    res = projective_resolution(R, max_steps=3, rng=rng)
    rep.check("gorenstein/pd_S2", res.verdict == "pd=0", [res.pd if res.pd is not None else -1], [0])
    rep.check("gorenstein/pd_S2_oracle", oracles.is_free_over_local(R, 1) == (res.pd == 0), [], [])
    g = gorenstein_membership(C.S2, k, bound=3, rng=rng)
    W = g["witness"]
    ok = (g["gorenstein_projective"] == "yes" and W is not None and W.q0_iso and W.components_projective
          and W.exact_interior and W.period is not None and 2 % W.period == 0)
    rep.check("gorenstein/gp_k", ok, [W.period or 0] if W else [], [2], witness=W is not None)
    for M in (k, R, direct_sum(k, R)):
        g = gorenstein_membership(C.S2, M, bound=3, rng=rng)
        rep.check(f"gorenstein/gp_gi_{M.name or 'k+S2'}",
                  g["gorenstein_projective"] == "yes" and g["gorenstein_injective"] == "yes", [M.dim], [M.dim],
                  witness=g["witness"] is not None)
    sh = stable_hom(k, k).dim
    rep.check("gorenstein/stable_hom_kk", sh == 1, [sh], [1])
    rep.check("gorenstein/stable_hom_kk_oracle", oracles.stable_hom_dim(k, k, R, pi) == sh,
              [oracles.stable_hom_dim(k, k, R, pi)], [sh])
    e = ext1(k, k).dim
    rep.check("gorenstein/ext1_kk", e == 1, [e], [1])
    rep.check("gorenstein/ext1_kk_oracle", oracles.ext1_dim(k, k, R, pi) == e, [oracles.ext1_dim(k, k, R, pi)], [e])
    e2 = ext1(k, R).dim
    rep.check("gorenstein/ext1_kS2_oracle", oracles.ext1_dim(k, R, R, pi) == e2 == 0, [e2], [0])


# -- 7. homotopy -----------------------------------------------------------------------

def _all_maps(M: FinModule, N: FinModule):
    from .modules import hom_space
    F = M.field
    H = hom_space(M, N)
    if H.shape[0] == 0:
        return [F.zeros((N.dim, M.dim))]
    return [combine(F, F.array(c), H) for c in itertools.product(range(F.p), repeat=H.shape[0])]


def homotopy_triples(C: Corpus):
    F = C.F
    k, R = C.k, C.S2reg
    RR = direct_sum(R, R)
    covers = [("k<-S2", k, R, C.k_cover), ("S2<-S2", R, R, F.eye(2)),
              ("k<-S2+S2", k, RR, F.array([[1, 0, 1, 0]]))]
    return [(f"{X.name}->{cname}", X, Y, I, pi) for X in (k, R) for cname, Y, I, pi in covers]


def suite_homotopy(C: Corpus, opts: Options, rep: Report):
    for name, X, Y, I, pi in homotopy_triples(C):
        P = path_object(Y, I, pi)
        maps = _all_maps(X, Y)
        agree = stable_agree = total = 0
        for f, g in itertools.product(maps, repeat=2):
            r = right_homotopic(f, g, X, P)
            total += 1
            agree += r["agree"]
            stable_agree += r.get("stable", r["cover"]) == r["cover"]
        rep.check(f"homotopy/{name}/agree", agree == total, [total], [agree])
        rep.check(f"homotopy/{name}/stable", stable_agree == total, [total], [stable_agree])
    for X in C.cdg_list():
        Cn, _, _ = cone_id(X)
        h, _ = homotopy_classes(Cn, Cn, 0)
        rep.check(f"homotopy/cone({X.name})/zero", h == 0, [Cn.dim], [h])
    P = path_object(C.k, C.S2reg, C.k_cover)
    rows = P.rows_exact()
    rep.check("homotopy/path_object_k/dim", P.PY.dim == 3, [P.PY.dim], [3], witness=True)
    rep.check("homotopy/path_object_k/rows", all(rows.values()), [P.omega.dim, P.PY.dim], [2 * C.k.dim, C.S2reg.dim])


# -- 8. signs --------------------------------------------------------------------------

MUTATIONS = {
    "drop_parity_term": lambda k, a: k * (k + 1) // 2,
    "drop_triangular_term": lambda k, a: k * a,
    "flip_parity_term": lambda k, a: k * (a + 1) + k * (k + 1) // 2,
    "flip_triangular_term": lambda k, a: k * a + k * (k + 1) // 2 + k,
}


def suite_signs(C: Corpus, opts: Options, rep: Report):
    objs = C.cdg_list()
    for X in objs:
        ok = all(suspend(suspend(X, m), n).equals(suspend(X, m + n)) for m in range(-2, 3) for n in range(-2, 3))
        rep.check(f"signs/suspend/{X.name}", ok, [X.dim], [X.dim])
    for i, X in enumerate(objs):
        for j, Y in enumerate(objs):
            if X.ring is not Y.ring:
                continue
            H = dg_hom(X, Y)
            rep.check(f"signs/dg_hom/{i}:{X.name}->{j}:{Y.name}", H.d_squared_zero(),
                      [sum(H.dims().values())], [sum(H.dims().values())])
    base = completed_bar_crosscheck(C.XK)
    rep.check("signs/crosscheck/default", base["equal"], base["window"], [len(base["mismatches"])])
    for name, sign in MUTATIONS.items():
        cc = completed_bar_crosscheck(C.XK, sign=sign)
        rep.check(f"signs/mutation/{name}", not cc["equal"], cc["window"], [len(cc["mismatches"])])


RUNNERS = {
    "curvature": suite_curvature, "sbar": suite_sbar, "adjunction": suite_adjunction, "bar": suite_bar,
    "gpm": suite_gpm, "gorenstein": suite_gorenstein, "homotopy": suite_homotopy, "signs": suite_signs,
}


def run_suites(names, C: Corpus, opts: Options) -> Report:
    rep = Report()
    if isinstance(names, str):
        names = SUITES if names == "all" else (names,)
    for name in names:
        if name not in RUNNERS:
            raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
        log.info("suite %s", name)
        RUNNERS[name](C, opts, rep)
    return rep
