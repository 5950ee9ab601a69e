"""Finite shadows of the model-category layer.

Complexes of modules over a FinAlgebra ``R`` are CdgModules over
``dg_ring(R)``.  Every class-membership verdict here is relative to the
finite lists or bounds passed in, and the returned records say so.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FinAlgebra, FinModule, combine, direct_sum, quotient, submodule
from .graded import CdgModule, dg_ring, homotopy_classes, is_morphism, morphism_space
from .modules import (classify_module, ext1, factoring_maps, factors_through_cover, find_isomorphism,
                      flatten, hom_space, injective_envelope, is_module_map, is_projective,
                      projective_cover, projective_resolution)


# -- complexes of modules ----------------------------------------------------------

def complex_from(R: FinAlgebra, comps: dict, maps: dict | None = None, name: str = "",
                 validate: bool = True) -> CdgModule:
    """Assemble ``comps[k]`` with ``maps[k]: comps[k] -> comps[k+1]``."""
    F = R.field
    maps = maps or {}
    ks = sorted(k for k, m in comps.items() if m.dim)
    offs = {}
    o = 0
    for k in ks:
        offs[k] = o
        o += comps[k].dim
    N = o
    degrees = np.concatenate([[k] * comps[k].dim for k in ks]).astype(np.int64) if N else np.zeros(0, np.int64)
    action = F.zeros((R.dim, N, N))
    diff = F.zeros((N, N))
    for k in ks:
        sl = slice(offs[k], offs[k] + comps[k].dim)
        action[:, sl, sl] = comps[k].action
        if k + 1 in offs and k in maps:
            diff[offs[k + 1]:offs[k + 1] + comps[k + 1].dim, sl] = maps[k]
    return CdgModule(dg_ring(R), degrees, action, diff, name=name, validate=validate)


def component(X: CdgModule, k: int) -> FinModule:
    ii = X.indices(k)
    return FinModule(X.ring.algebra, X.action[:, ii][:, :, ii], name=f"{X.name}^{k}", validate=False)


def differential(X: CdgModule, k: int) -> np.ndarray:
    return X.diff[np.ix_(X.indices(k + 1), X.indices(k))]


def _require_complex(X: CdgModule):
    F = X.field
    if not F.is_zero(F.mul(X.diff, X.diff)):
        raise ValueError("not a complex: d^2 != 0")


def stalk(M: FinModule, k: int = 0) -> CdgModule:
    return complex_from(M.algebra, {k: M}, name=f"iota^{k}({M.name})")


def syzygy(X: CdgModule, k: int):
    """``(Z^k, inclusion into X^k)``."""
    _require_complex(X)
    F = X.field
    Xk = component(X, k)
    cols = F.nullspace(differential(X, k)) if Xk.dim else F.zeros((0, 0))
    return submodule(Xk, cols), cols


def cosyzygy(X: CdgModule, k: int):
    """``(Q^k, projection from X^k)``."""
    _require_complex(X)
    F = X.field
    Xk = component(X, k)
    prev = differential(X, k - 1)
    cols = F.column_basis(prev) if prev.size else F.zeros((Xk.dim, 0))
    return quotient(Xk, cols)


def _restrict(X: CdgModule, keep: np.ndarray, name: str) -> CdgModule:
    return CdgModule(X.ring, X.degrees[keep], X.action[:, keep][:, :, keep], X.diff[np.ix_(keep, keep)],
                     name=name, validate=False)


def brutal_le(X: CdgModule, n: int) -> CdgModule:
    return _restrict(X, np.nonzero(X.degrees <= n)[0], f"sigma<={n}({X.name})")


def brutal_gt(X: CdgModule, n: int) -> CdgModule:
    return _restrict(X, np.nonzero(X.degrees > n)[0], f"sigma>{n}({X.name})")


def brutal_window(X: CdgModule, lo: int, hi: int) -> CdgModule:
    return _restrict(X, np.nonzero((X.degrees >= lo) & (X.degrees <= hi))[0], f"sigma[{lo},{hi}]({X.name})")


def soft_le(X: CdgModule, n: int) -> CdgModule:
    """``tau<=n``: ``X^k`` for ``k < n`` and ``Z^n`` in degree ``n``."""
    R = X.ring.algebra
    comps = {k: component(X, k) for k in X.support() if k < n}
    maps = {k: differential(X, k) for k in comps if k + 1 < n}
    Zn, inc = syzygy(X, n)
    comps[n] = Zn
    if n - 1 in comps and Zn.dim:
        maps[n - 1] = X.field.coords(inc, differential(X, n - 1))
    return complex_from(R, comps, maps, name=f"tau<={n}({X.name})")


def soft_ge(X: CdgModule, n: int) -> CdgModule:
    """``tau>=n``: ``Q^n`` in degree ``n`` and ``X^k`` for ``k > n``."""
    R = X.ring.algebra
    Qn, proj = cosyzygy(X, n)
    comps = {k: component(X, k) for k in X.support() if k > n}
    maps = {k: differential(X, k) for k in comps if k + 1 in comps}
    comps[n] = Qn
    if n + 1 in comps and Qn.dim:
        # the map X^n -> X^(n+1) factors through Q^n
        sec = X.field.solve(proj, X.field.eye(Qn.dim))
        maps[n] = X.field.mul(differential(X, n), sec)
    return complex_from(R, comps, maps, name=f"tau>={n}({X.name})")


def periodic_complex(M: FinModule, f, lo: int, hi: int, name: str = "") -> CdgModule:
    """``M`` in every degree of ``[lo, hi]`` with each differential ``f``."""
    comps = {k: M for k in range(lo, hi + 1)}
    maps = {k: f for k in range(lo, hi)}
    return complex_from(M.algebra, comps, maps, name=name or f"periodic({M.name})")


def cohomology_dims(X: CdgModule, lo: int | None = None, hi: int | None = None) -> dict:
    F = X.field
    sup = X.support()
    if not sup:
        return {}
    lo = sup[0] if lo is None else lo
    hi = sup[-1] if hi is None else hi
    out = {}
    for k in range(lo, hi + 1):
        dim = X.indices(k).size
        out[k] = dim - F.rank(differential(X, k)) - F.rank(differential(X, k - 1)) if dim else 0
    return out


# -- orthogonality -------------------------------------------------------------------

def orthogonal_membership(S: list, X: FinModule, side: str = "right") -> dict:
    """``right``: ``Ext^1(T, X) = 0`` for all ``T`` in ``S``; ``left``: ``Ext^1(X, T) = 0``."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    pairs = []
    for T in S:
        e = ext1(T, X) if side == "right" else ext1(X, T)
        pairs.append({"against": T.name, "ext1": e.dim})
    return {"side": side, "pairs": pairs, "verdict": all(p["ext1"] == 0 for p in pairs),
            "scope": f"relative to a list of {len(S)} modules"}


# -- path objects and right homotopy ----------------------------------------------------

@dataclass
class PathObjectData:
    Y: FinModule
    I: FinModule
    pi: np.ndarray
    PY: FinModule
    inclusion: np.ndarray  # PY -> Y + Y + I
    omega: FinModule
    omega_to_PY: np.ndarray
    Y_to_PY: np.ndarray
    PY_to_YY: np.ndarray
    PY_to_I: np.ndarray

    def rows_exact(self) -> dict:
        """Rank checks for ``0 -> OmegaY -> PY -> Y+Y -> 0`` and ``0 -> Y -> PY -> I -> 0``."""
        F = self.Y.field
        r1 = (F.rank(self.omega_to_PY) == self.omega.dim
              and F.rank(self.PY_to_YY) == 2 * self.Y.dim
              and self.PY.dim - F.rank(self.PY_to_YY) == F.rank(self.omega_to_PY)
              and F.is_zero(F.mul(self.PY_to_YY, self.omega_to_PY)))
        r2 = (F.rank(self.Y_to_PY) == self.Y.dim
              and F.rank(self.PY_to_I) == self.I.dim
              and self.PY.dim - F.rank(self.PY_to_I) == F.rank(self.Y_to_PY)
              and F.is_zero(F.mul(self.PY_to_I, self.Y_to_PY)))
        diag = F.equal(F.mul(self.PY_to_YY, self.Y_to_PY),
                       np.concatenate([F.eye(self.Y.dim), F.eye(self.Y.dim)], axis=0))
        return {"omega_row": bool(r1), "Y_row": bool(r2), "diagonal": bool(diag)}


def path_object(Y: FinModule, I: FinModule, pi) -> PathObjectData:
    """``PY = {(y1, y2, i) : y1 - y2 = pi(i)}``, the pullback of ``Y+Y -> Y <- I``."""
    F = Y.field
    pi = F.array(pi)
    if F.rank(pi) != Y.dim:
        raise ValueError("cover I -> Y is not an epimorphism")
    if not is_module_map(I, Y, pi):
        raise ValueError("cover is not a module map")
    n = Y.dim
    YYI = direct_sum(Y, Y, I)
    constraint = np.concatenate([F.eye(n), F.reduce(-F.eye(n)), F.reduce(-pi)], axis=1)
    cols = F.nullspace(constraint)
    PY = submodule(YYI, cols)
    PY.name = f"P({Y.name})"
    omega_cols = F.nullspace(pi)
    omega = submodule(I, omega_cols)
    omega_to_PY = F.coords(cols, np.concatenate([F.zeros((2 * n, omega_cols.shape[1])), omega_cols], axis=0))
    Y_to_PY = F.coords(cols, np.concatenate([F.eye(n), F.eye(n), F.zeros((I.dim, n))], axis=0))
    PY_to_YY = cols[:2 * n, :]
    PY_to_I = cols[2 * n:, :]
    return PathObjectData(Y, I, pi, PY, cols, omega, omega_to_PY, Y_to_PY, PY_to_YY, PY_to_I)


def right_homotopic(f, g, X: FinModule, P: PathObjectData) -> dict:
    """Path-object verdict, the cover-lifting verdict and (self-injective case) the stable verdict."""
    F = X.field
    f, g = F.array(f), F.array(g)
    H = hom_space(X, P.PY)
    target = np.concatenate([f, g], axis=0).reshape(-1)
    if H.shape[0]:
        images = flatten(np.stack([F.mul(P.PY_to_YY, h) for h in H]))
        path = F.in_span(images, target)
    else:
        path = F.is_zero(target)
    diff = F.sub(f, g)
    cover = factors_through_cover(diff, P.pi, X, P.I)
    out = {"path_object": bool(path), "cover": bool(cover), "agree": bool(path) == bool(cover)}
    if classify_module(FinModule.regular(X.algebra))["injective"]:
        fac = factoring_maps(X, P.Y, "projectives")
        out["stable"] = bool(F.in_span(fac, diff.reshape(-1))) if fac.shape[1] else bool(F.is_zero(diff))
    return out


# -- the adjunction Q^0 -| iota^0 ---------------------------------------------------

def q0(X: CdgModule):
    return cosyzygy(X, 0)


def iota0(M: FinModule) -> CdgModule:
    return stalk(M, 0)


def _section(F, proj):
    return F.solve(proj, F.eye(proj.shape[0]))


def q0_transpose_to_module(phi, X: CdgModule, M: FinModule):
    """Chain map ``X -> iota^0 M`` to ``Q^0 X -> M``."""
    F = X.field
    Q, proj = q0(X)
    phi0 = F.array(phi)[:, X.indices(0)]
    if Q.dim == 0:
        return F.zeros((M.dim, 0))
    return F.mul(phi0, _section(F, proj))


def q0_transpose_to_chain(psi, X: CdgModule, M: FinModule):
    """``Q^0 X -> M`` to the chain map ``X -> iota^0 M``."""
    F = X.field
    Q, proj = q0(X)
    phi = F.zeros((M.dim, X.dim))
    if Q.dim:
        phi[:, X.indices(0)] = F.mul(psi, proj)
    return phi


def q0_on_morphism(u, X: CdgModule, Y: CdgModule):
    F = X.field
    QX, px = q0(X)
    QY, py = q0(Y)
    if QX.dim == 0 or QY.dim == 0:
        return F.zeros((QY.dim, QX.dim))
    u0 = F.array(u)[np.ix_(Y.indices(0), X.indices(0))]
    return F.chain(py, u0, _section(F, px))


def q0_iota_adjunction_check(pairs: list, rng: np.random.Generator, count: int = 20) -> dict:
    """Round trips of the hom-set bijection and both triangle identities on random data."""
    F = pairs[0][1].field if pairs else None
    failures = []
    trips = 0
    for t in range(count):
        X, M = pairs[t % len(pairs)]
        iM = iota0(M)
        Q, proj = q0(X)
        # chain side
        B = morphism_space(X, iM)
        if B.shape[0]:
            phi = combine(F, F.random(B.shape[0], rng), B)
            back = q0_transpose_to_chain(q0_transpose_to_module(phi, X, M), X, M)
            trips += 1
            if not F.equal(back, phi):
                failures.append(f"chain round trip {t}")
        H = hom_space(Q, M)
        if H.shape[0]:
            psi = combine(F, F.random(H.shape[0], rng), H)
            phi = q0_transpose_to_chain(psi, X, M)
            trips += 1
            if not is_morphism(phi, X, iM):
                failures.append(f"transpose of a module map is not a chain map {t}")
            if not F.equal(q0_transpose_to_module(phi, X, M), psi):
                failures.append(f"module round trip {t}")
        # triangle identities
        eta = q0_transpose_to_chain(F.eye(Q.dim), X, Q)  # X -> iota^0 Q^0 X
        iQ = iota0(Q)
        eps_Q = F.eye(Q.dim)  # Q^0 iota^0 N = N
        if not F.equal(F.mul(eps_Q, q0_on_morphism(eta, X, iQ)), F.eye(Q.dim)):
            failures.append(f"triangle at Q^0 X {t}")
        eta_iM = q0_transpose_to_chain(F.eye(M.dim), iM, M)
        if not F.equal(F.mul(F.eye(M.dim), eta_iM), F.eye(iM.dim)):
            failures.append(f"triangle at iota^0 M {t}")
    return {"count": count, "round_trips": trips, "failures": failures, "ok": not failures}


# -- Gorenstein membership ----------------------------------------------------------------

@dataclass
class GorensteinWitness:
    complex: CdgModule
    lo: int
    hi: int
    components_projective: bool
    exact_interior: bool
    q0_iso: bool | None
    period: int | None


def complete_resolution(M: FinModule, bound: int):
    """Minimal projective resolution to the left and envelope coresolution to the right.

    Returns ``(complex or None, reason)``; ``P_0`` sits in degree 0 so ``Q^0 = M``.
    """
    R = M.algebra
    F = M.field
    comps, maps = {}, {}
    cur = M
    prev_inc = None
    cover0 = None
    for j in range(bound):
        cov = projective_cover(cur)
        comps[-j] = cov.projective
        if j == 0:
            cover0 = cov
        else:
            maps[-j] = F.mul(prev_inc, cov.map)
        omega, inc = cov.syzygy()
        prev_inc = inc
        cur = omega
    cur, to_cur = M, None
    for j in range(bound):
        I, iota = injective_envelope(cur)
        if not is_projective(I):
            return None, f"injective envelope at step {j} is not projective"
        comps[j + 1] = I
        if j == 0:
            maps[0] = F.mul(iota, cover0.map)
        else:
            maps[j] = F.mul(iota, to_cur)
        nxt, proj = quotient(I, iota)
        cur, to_cur = nxt, proj
    return complex_from(R, comps, maps, name=f"complete({M.name})"), ""


def _period_up_to_iso(X: CdgModule, lo: int, hi: int, rng=None):
    """Smallest ``p`` in ``{1, 2}`` with ``X^j = X^(j+p)`` and ``Z^j = Z^(j+p)`` up to isomorphism."""
    for p in (1, 2):
        ok = True
        for j in range(lo, hi - p + 1):
            pairs = [(component(X, j), component(X, j + p)), (syzygy(X, j)[0], syzygy(X, j + p)[0])]
            if not all(find_isomorphism(a, b, rng)[0] for a, b in pairs):
                ok = False
                break
        if ok:
            return p
    return None


def gorenstein_projective(M: FinModule, bound: int, rng=None) -> tuple:
    """``(verdict, witness, reason)`` with verdict ``"yes"``, ``"no"`` or ``"undecided(bound)"``."""
    res = projective_resolution(M, max_steps=bound, rng=rng)
    if res.pd is not None and res.pd > 0:
        return "no", None, "finite projective dimension and not projective"
    X, reason = complete_resolution(M, bound)
    if X is None:
        return f"undecided({bound})", None, reason
    lo, hi = -(bound - 1), bound
    proj = all(is_projective(component(X, k)) for k in range(lo, hi + 1))
    h = cohomology_dims(X, lo + 1, hi - 1)
    exact = all(v == 0 for v in h.values())
    Q, _ = q0(X)
    iso, _ = find_isomorphism(Q, M, rng)
    period = _period_up_to_iso(X, lo, hi - 1, rng)
    witness = GorensteinWitness(X, lo, hi, proj, exact, iso, period)
    if proj and exact and iso:
        return "yes", witness, ""
    return f"undecided({bound})", witness, "witness checks failed"


def gorenstein_membership(R: FinAlgebra, M: FinModule, bound: int = 3, rng=None) -> dict:
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if M.algebra is not R:
        raise ValueError("module is over a different algebra")
    res = projective_resolution(M, max_steps=bound, rng=rng)
    gp, witness, reason = gorenstein_projective(M, bound, rng)
    DM = FinModule(R.op, np.transpose(M.action, (0, 2, 1)), name=f"D({M.name})", validate=False)
    gi, _, gi_reason = gorenstein_projective(DM, bound, rng)
    return {"finite_pd": res.verdict, "gorenstein_projective": gp, "gorenstein_injective": gi,
            "witness": witness, "reason": reason or gi_reason, "bound": bound}


# -- weakly trivial objects --------------------------------------------------------------

def weakly_trivial_examples_check(P: CdgModule, X: CdgModule, p_window: tuple) -> dict:
    """``[P, S X] = 0`` for a window of an acyclic complex of projectives ``P``.

    ``P`` is the brutal truncation of the honest complex to ``p_window``.
    ``H^1 Hom(P, X)`` only sees ``P^j`` for ``j`` in ``[a-2, b]`` when ``X``
    is supported on ``[a, b]``; narrower windows are refused.
    """
    plo, phi = p_window
    sup = X.support()
    if not sup:
        return {"verdict": True, "dim": 0, "window": p_window, "refused": None}
    a, b = sup[0], sup[-1]
    if plo > a - 2 or phi < b:
        return {"verdict": None, "dim": None, "window": p_window,
                "refused": f"window insufficient: need P on [{a - 2}, {b}]"}
    Pw = brutal_window(P, plo, phi)
    dim, _ = homotopy_classes(Pw, X, 1)
    return {"verdict": dim == 0, "dim": dim, "window": p_window, "refused": None}
