"""Curved mixed complexes, duplexes, folding, the stable bar resolution and
the completed bar resolution over ``K = S[s]/(s^2)``, ``d(s) = w``.

Conventions for the unbounded objects (all coordinates are listed in
increasing ``k``):

* ``sbar(M)^n = M^(n mod 2) + M^(n+1 mod 2)``.
* ``(Bprod X)^n = prod_{k >= n} X^k``.
* ``sbar(fold X)^n = prod_k X^k`` with the first slot holding ``k = n mod 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import FinAlgebra, FinModule, direct_sum
from .field import Field
from .graded import CdgModule, CdgRing, dg_ring, is_contractible, morphism_space
from .modules import find_invertible, is_projective
from .tame import TameComplex, is_acyclic_on, laws_report

_RINGS: dict = {}


def _ring_key(S: FinAlgebra, w, kind: str):
    return (id(S), tuple(int(v) if S.field.p else str(v) for v in S.field.array(w)), kind)


def koszul_ring(S: FinAlgebra, w) -> CdgRing:
    """The Koszul cdg ring of ``(S, w)``, cached so module comparisons share it."""
    key = _ring_key(S, w, "K")
    if key not in _RINGS:
        _RINGS[key] = (S, CdgRing.koszul(S, w))
    return _RINGS[key][1]


def curved_ring(S: FinAlgebra, w) -> CdgRing:
    key = _ring_key(S, w, "Sw")
    if key not in _RINGS:
        _RINGS[key] = (S, CdgRing.curved_two_periodic(S, w))
    return _RINGS[key][1]


# -- mixed complexes -------------------------------------------------------

class MixedComplex:
    """Finite-support ``(X, d, s)`` over ``(S, w)``.

    ``comps[k]`` is the S-module ``X^k``; ``d[k]: X^k -> X^(k+1)`` and
    ``s[k]: X^k -> X^(k-1)``; absent entries are zero.
    """

    def __init__(self, S: FinAlgebra, w, comps: dict, d: dict | None = None, s: dict | None = None,
                 *, name: str = "", validate: bool = True):
        self.S = S
        F = S.field
        self.w = F.array(w).reshape(S.dim)
        self.comps = {int(k): m for k, m in comps.items() if m.dim > 0}
        self._d = {int(k): F.array(v) for k, v in (d or {}).items()}
        self._s = {int(k): F.array(v) for k, v in (s or {}).items()}
        self.name = name
        if validate:
            problems = check_mixed(self)
            if problems:
                raise ValueError(f"mixed complex {name or '?'} invalid: {problems[:3]}")

    def __repr__(self):
        return f"MixedComplex({self.name or '?'}, dims={self.dims()})"

    @property
    def field(self) -> Field:
        return self.S.field

    def support(self) -> list[int]:
        return sorted(self.comps)

    @property
    def lo(self) -> int:
        return min(self.comps) if self.comps else 0

    @property
    def hi(self) -> int:
        return max(self.comps) if self.comps else -1

    def dims(self) -> dict:
        return {k: self.comps[k].dim for k in self.support()}

    @property
    def total_dim(self) -> int:
        return sum(m.dim for m in self.comps.values())

    def component(self, k: int) -> FinModule:
        return self.comps.get(k) or FinModule.zero(self.S)

    def d(self, k: int) -> np.ndarray:
        m = self._d.get(k)
        if m is None or m.size == 0:
            return self.field.zeros((self.component(k + 1).dim, self.component(k).dim))
        return m

    def s(self, k: int) -> np.ndarray:
        m = self._s.get(k)
        if m is None or m.size == 0:
            return self.field.zeros((self.component(k - 1).dim, self.component(k).dim))
        return m

    def offsets(self) -> dict:
        out = {}
        off = 0
        for k in self.support():
            out[k] = off
            off += self.comps[k].dim
        return out

    # -- conversions ---------------------------------------------------
    def to_cdg(self) -> CdgModule:
        """The same data as a module over :func:`koszul_ring`."""
        S = self.S
        F = self.field
        K = koszul_ring(S, self.w)
        n = S.dim
        N = self.total_dim
        off = self.offsets()
        degrees = np.concatenate([[k] * self.comps[k].dim for k in self.support()]).astype(np.int64) \
            if N else np.zeros(0, dtype=np.int64)
        action = F.zeros((2 * n, N, N))
        diff = F.zeros((N, N))
        for k in self.support():
            Xk = self.comps[k]
            sl = slice(off[k], off[k] + Xk.dim)
            for i in range(n):
                action[i, sl, sl] = Xk.action[i]
            if k + 1 in off:
                diff[off[k + 1]:off[k + 1] + self.comps[k + 1].dim, sl] = self.d(k)
            if k - 1 in off:
                Xd = self.comps[k - 1]
                tl = slice(off[k - 1], off[k - 1] + Xd.dim)
                sk = self.s(k)
                for i in range(n):
                    action[n + i, tl, sl] = F.mul(Xd.action[i], sk)
        return CdgModule(K, degrees, action, diff, name=self.name, validate=False)

    @classmethod
    def from_cdg(cls, X: CdgModule, S: FinAlgebra, w, name: str = "", validate: bool = True):
        n = S.dim
        sidx = n  # index of s in the Koszul basis
        comps, d, s = {}, {}, {}
        idx = {k: X.indices(k) for k in X.support()}
        for k, ii in idx.items():
            comps[k] = FinModule(S, X.action[:n][:, ii][:, :, ii], validate=False)
        for k, ii in idx.items():
            if k + 1 in idx:
                d[k] = X.diff[np.ix_(idx[k + 1], ii)]
            if k - 1 in idx:
                s[k] = X.action[sidx][np.ix_(idx[k - 1], ii)]
        return cls(S, w, comps, d, s, name=name or X.name, validate=validate)

    @classmethod
    def zero(cls, S: FinAlgebra, w) -> "MixedComplex":
        return cls(S, w, {}, name="0", validate=False)

    def as_tame(self) -> TameComplex:
        lo, hi = (self.lo - 1, self.hi + 1) if self.comps else (0, 0)
        comps = {k: self.component(k) for k in range(lo, hi + 1)}
        d = {k: self.d(k) for k in range(lo, hi)}
        s = {k: self.s(k) for k in range(lo + 1, hi + 1)}
        return TameComplex(self.S, self.w, lo, hi, comps, d, s, "zero", "zero", name=self.name,
                           validate=False)

    def suspend(self, m: int) -> "MixedComplex":
        """``S^m X``: ``X^(k+m)`` in degree ``k``; ``d`` and ``s`` scaled by ``(-1)^m``."""
        F = self.field
        sg = F.sign(m)
        comps = {k - m: v for k, v in self.comps.items()}
        d = {k - m: F.reduce(sg * v) for k, v in self._d.items()}
        s = {k - m: F.reduce(sg * v) for k, v in self._s.items()}
        return MixedComplex(self.S, self.w, comps, d, s, name=f"S^{m}({self.name})", validate=False)

    def s_complex(self) -> CdgModule:
        """``(X, s)`` as a dg module over ``S`` (degrees negated so that ``s`` raises them)."""
        F = self.field
        R = dg_ring(self.S)
        off = self.offsets()
        N = self.total_dim
        degrees = np.concatenate([[-k] * self.comps[k].dim for k in self.support()]).astype(np.int64) \
            if N else np.zeros(0, dtype=np.int64)
        action = F.zeros((self.S.dim, N, N))
        diff = F.zeros((N, N))
        for k in self.support():
            sl = slice(off[k], off[k] + self.comps[k].dim)
            action[:, sl, sl] = self.comps[k].action
            if k - 1 in off:
                diff[off[k - 1]:off[k - 1] + self.comps[k - 1].dim, sl] = self.s(k)
        return CdgModule(R, degrees, action, diff, name=f"({self.name}, s)", validate=False)


def _linearity(F, S, src: FinModule, tgt: FinModule, f) -> bool:
    return all(F.equal(F.mul(f, src.action[g]), F.mul(tgt.action[g], f)) for g in S.generators)


def check_mixed(X: MixedComplex) -> list[str]:
    """All violated identities; empty when valid."""
    out = []
    for k in X.support():
        if X.comps[k].algebra is not X.S:
            out.append(f"component {k} is over a different algebra")
    if out:
        return out
    lo, hi = (X.lo, X.hi) if X.comps else (0, -1)
    return laws_report(X.S, X.w, X.component, X.d, X.s, lo - 1, hi + 1)


# -- duplexes ----------------------------------------------------------------

class Duplex:
    """``(M0 <-> M1; f, g)`` with ``fg = w`` and ``gf = w``."""

    def __init__(self, S: FinAlgebra, w, M0: FinModule, M1: FinModule, f, g, *, name: str = "",
                 validate: bool = True, layout=None):
        self.S = S
        F = S.field
        self.w = F.array(w).reshape(S.dim)
        self.M0, self.M1 = M0, M1
        self.f = F.array(f).reshape(M1.dim, M0.dim)
        self.g = F.array(g).reshape(M0.dim, M1.dim)
        self.name = name
        self.layout = layout
        if validate:
            problems = check_duplex(self)
            if problems:
                raise ValueError(f"duplex {name or '?'} invalid: {problems[:3]}")

    def __repr__(self):
        return f"Duplex({self.name or '?'}, dims=({self.M0.dim}, {self.M1.dim}))"

    @property
    def field(self) -> Field:
        return self.S.field

    def part(self, parity: int) -> FinModule:
        return self.M0 if parity % 2 == 0 else self.M1

    def map_from(self, parity: int) -> np.ndarray:
        return self.f if parity % 2 == 0 else self.g

    def suspend(self) -> "Duplex":
        F = self.field
        return Duplex(self.S, self.w, self.M1, self.M0, F.reduce(-self.g), F.reduce(-self.f),
                      name=f"S({self.name})", validate=False)

    def equals(self, other: "Duplex") -> bool:
        F = self.field
        return (self.M0.same_as(other.M0) and self.M1.same_as(other.M1)
                and F.equal(self.f, other.f) and F.equal(self.g, other.g))

    def to_cdg(self) -> CdgModule:
        F = self.field
        R = curved_ring(self.S, self.w)
        m0, m1 = self.M0.dim, self.M1.dim
        degrees = np.array([0] * m0 + [1] * m1, dtype=np.int64)
        action = np.stack([F.direct_sum(self.M0.action[i], self.M1.action[i]) for i in range(self.S.dim)])
        diff = F.block([[F.zeros((m0, m0)), self.g], [self.f, F.zeros((m1, m1))]])
        return CdgModule(R, degrees, action, diff, name=self.name, validate=False)


def check_duplex(M: Duplex) -> list[str]:
    F = M.field
    S = M.S
    out = []
    if not _linearity(F, S, M.M0, M.M1, M.f):
        out.append("f is not S-linear")
    if not _linearity(F, S, M.M1, M.M0, M.g):
        out.append("g is not S-linear")
    fg = F.sub(F.mul(M.f, M.g), M.M1.act(M.w))
    for r, c in zip(*np.nonzero(fg)):
        out.append(f"fg != w: cell ({r},{c})")
    gf = F.sub(F.mul(M.g, M.f), M.M0.act(M.w))
    for r, c in zip(*np.nonzero(gf)):
        out.append(f"gf != w: cell ({r},{c})")
    return out


def duplex_morphisms(M: Duplex, N: Duplex) -> list:
    """Basis of duplex morphisms as pairs ``(phi0, phi1)``."""
    B = morphism_space(M.to_cdg(), N.to_cdg())
    m0, n0 = M.M0.dim, N.M0.dim
    return [(b[:n0, :m0].copy(), b[n0:, m0:].copy()) for b in B]


def is_duplex_morphism(phi0, phi1, M: Duplex, N: Duplex) -> bool:
    F = M.field
    S = M.S
    return (_linearity(F, S, M.M0, N.M0, phi0) and _linearity(F, S, M.M1, N.M1, phi1)
            and F.equal(F.mul(N.f, phi0), F.mul(phi1, M.f)) and F.equal(F.mul(N.g, phi1), F.mul(phi0, M.g)))


# -- folding -------------------------------------------------------------------

def fold(X: MixedComplex, mode: str = "product") -> Duplex:
    """``M^0 = sum of even X^k``, ``M^1 = sum of odd X^k``, both maps ``d + s``.

    With finite support sums and products agree; ``mode`` only documents intent.
    """
    if mode not in ("sum", "product"):
        raise ValueError(f"mode must be 'sum' or 'product', got {mode!r}")
    problems = check_mixed(X)
    if problems:
        raise ValueError(f"fold needs a valid mixed complex: {problems[:3]}")
    F = X.field
    S = X.S
    parts = {0: [k for k in X.support() if k % 2 == 0], 1: [k for k in X.support() if k % 2 == 1]}
    offs = {}
    mods = {}
    for par, ks in parts.items():
        o = 0
        for k in ks:
            offs[k] = o
            o += X.comps[k].dim
        mods[par] = direct_sum(*[X.comps[k] for k in ks]) if ks else FinModule.zero(S)
    maps = {}
    for par in (0, 1):
        src, tgt = mods[par], mods[1 - par]
        m = F.zeros((tgt.dim, src.dim))
        for k in parts[par]:
            sl = slice(offs[k], offs[k] + X.comps[k].dim)
            for t, mat in ((k + 1, X.d(k)), (k - 1, X.s(k))):
                if t in X.comps:
                    m[offs[t]:offs[t] + X.comps[t].dim, sl] = F.add(m[offs[t]:offs[t] + X.comps[t].dim, sl], mat)
        maps[par] = m
    return Duplex(S, X.w, mods[0], mods[1], maps[0], maps[1], name=f"fold({X.name})",
                  validate=True, layout={"parts": parts, "offsets": offs})


def fold_block(M: Duplex, X: MixedComplex, k: int) -> slice:
    off = M.layout["offsets"][k]
    return slice(off, off + X.comps[k].dim)


# -- the stable bar resolution ---------------------------------------------------

def sbar(M: Duplex) -> TameComplex:
    """Globally 2-periodic Koszul module with window ``[-2, 2]``."""
    problems = check_duplex(M)
    if problems:
        raise ValueError(f"sbar needs a valid duplex: {problems[:3]}")
    F = M.field
    S = M.S
    mods = {0: direct_sum(M.M0, M.M1), 1: direct_sum(M.M1, M.M0)}
    comps = {n: mods[n % 2] for n in range(-2, 3)}
    d, s = {}, {}
    for n in range(-2, 3):
        a, b = M.part(n), M.part(n + 1)  # slots of degree n
        fa = M.map_from(n)  # a -> b
        gb = M.map_from(n + 1)  # b -> a
        # (x, y) in a + b  ->  (fa x + w y, -x - gb y) in b + a
        d[n] = F.block([[fa, b.act(M.w)], [F.reduce(-F.eye(a.dim)), F.reduce(-gb)]])
        # (x, y) -> (0, x) in sbar^(n-1) = b + a
        s[n] = F.block([[F.zeros((b.dim, a.dim)), F.zeros((b.dim, b.dim))],
                        [F.eye(a.dim), F.zeros((a.dim, b.dim))]])
    return TameComplex(S, M.w, -2, 2, comps, {n: d[n] for n in range(-2, 2)},
                       {n: s[n] for n in range(-1, 3)}, "periodic2", "periodic2",
                       name=f"sbar({M.name})")


# -- adjunction sbar -| fold_prod --------------------------------------------------

def _window_of(X: MixedComplex):
    return (X.lo, X.hi) if X.comps else (0, -1)


def transpose_prod_to_fold(alpha: dict, M: Duplex, X: MixedComplex, Xfold: Duplex | None = None):
    """``alpha: sbar(M) -> X`` (degrees of ``supp X``) to ``(phi0, phi1): M -> fold X``."""
    F = M.field
    Xfold = Xfold or fold(X)
    phi = {0: F.zeros((Xfold.M0.dim, M.M0.dim)), 1: F.zeros((Xfold.M1.dim, M.M1.dim))}
    for k in X.support():
        a = M.part(k).dim
        phi[k % 2][fold_block(Xfold, X, k), :] = np.asarray(alpha[k])[:, :a]
    return phi[0], phi[1]


def transpose_prod_from_fold(phi0, phi1, M: Duplex, X: MixedComplex, Xfold: Duplex | None = None) -> dict:
    """``alpha_n = [phi^(n), s phi^(n+1)]`` on ``sbar(M)^n = M^n + M^(n+1)``."""
    F = M.field
    Xfold = Xfold or fold(X)
    phi = {0: F.array(phi0), 1: F.array(phi1)}

    def comp(k):
        if k not in X.comps:
            return F.zeros((0, M.part(k).dim))
        return phi[k % 2][fold_block(Xfold, X, k), :]

    out = {}
    for n in X.support():
        first = comp(n)
        nxt = comp(n + 1)
        second = F.mul(X.s(n + 1), nxt) if nxt.shape[0] else F.zeros((X.comps[n].dim, M.part(n + 1).dim))
        out[n] = np.concatenate([first, second], axis=1)
    return out


def is_tame_morphism(alpha: dict, T, X: MixedComplex, lo: int, hi: int) -> bool:
    """Check ``alpha: T -> X`` (zero outside its keys) on degrees ``[lo, hi]``."""
    F = X.field

    def a(n):
        m = alpha.get(n)
        if m is None:
            return F.zeros((X.component(n).dim, T.component(n).dim))
        return m

    for n in range(lo, hi + 1):
        An = a(n)
        if An.shape != (X.component(n).dim, T.component(n).dim):
            return False
        if not _linearity(F, X.S, T.component(n), X.component(n), An):
            return False
        if not F.equal(F.mul(X.d(n), An), F.mul(a(n + 1), T.d(n))):
            return False
        if not F.equal(F.mul(X.s(n), An), F.mul(a(n - 1), T.s(n))):
            return False
    return True


def counit_prod(X: MixedComplex) -> dict:
    """``eps_X: sbar(fold X) -> X``, ``eps_n(x) = x_n + s x_(n+1)``."""
    Xf = fold(X)
    F = X.field
    return transpose_prod_from_fold(F.eye(Xf.M0.dim), F.eye(Xf.M1.dim), Xf, X, Xf)


def unit_prod(M: Duplex, lo: int, hi: int) -> dict:
    """Components ``M^(n mod 2) -> sbar(M)^n`` of ``M -> fold_prod sbar(M)`` for ``n`` in ``[lo, hi]``."""
    F = M.field
    out = {}
    for n in range(lo, hi + 1):
        a, b = M.part(n).dim, M.part(n + 1).dim
        out[n] = np.concatenate([F.eye(a), F.zeros((b, a))], axis=0)
    return out


# -- adjunction fold_sum -| sbar o S ---------------------------------------------

def transpose_sum_to_sbar(phi0, phi1, X: MixedComplex, M: Duplex, Xfold: Duplex | None = None) -> dict:
    """``(phi0, phi1): fold X -> M`` to ``psi: X -> sbar(S M)``, ``psi_n = [phi^(n-1) s ; phi^n]``."""
    F = M.field
    Xfold = Xfold or fold(X)
    phi = {0: F.array(phi0), 1: F.array(phi1)}

    def comp(k):
        if k not in X.comps:
            return F.zeros((M.part(k).dim, 0))
        return phi[k % 2][:, fold_block(Xfold, X, k)]

    out = {}
    for n in X.support():
        prev = comp(n - 1)
        first = F.mul(prev, X.s(n)) if prev.shape[1] else F.zeros((M.part(n - 1).dim, X.comps[n].dim))
        out[n] = np.concatenate([first, comp(n)], axis=0)
    return out


def transpose_sum_from_sbar(psi: dict, X: MixedComplex, M: Duplex, Xfold: Duplex | None = None):
    """Inverse of :func:`transpose_sum_to_sbar`: keep the second slot."""
    F = M.field
    Xfold = Xfold or fold(X)
    phi = {0: F.zeros((M.M0.dim, Xfold.M0.dim)), 1: F.zeros((M.M1.dim, Xfold.M1.dim))}
    for k in X.support():
        first = M.part(k + 1).dim
        phi[k % 2][:, fold_block(Xfold, X, k)] = np.asarray(psi[k])[first:, :]
    return phi[0], phi[1]


def unit_sum(X: MixedComplex) -> dict:
    """``eta_X: X -> sbar(S fold X)``."""
    Xf = fold(X)
    F = X.field
    return transpose_sum_to_sbar(F.eye(Xf.M0.dim), F.eye(Xf.M1.dim), X, Xf, Xf)


# -- inductions and bar complexes --------------------------------------------------

def induce_koszul(V: MixedComplex, shift: int = 0) -> MixedComplex:
    """``K (x)_S S^shift V`` using only ``d`` of ``V``.

    Degree ``m`` is ``1 (x) V^m + s (x) V^(m+1)`` with ``d(1 x v) = 1 x dv``,
    ``d(s x y) = 1 x wy - s x dy``, ``s(1 x v) = s x v``, ``s(s x y) = 0``.
    """
    F = V.field
    S = V.S
    W = V.suspend(shift) if shift else V
    if not W.comps:
        return MixedComplex.zero(S, V.w)
    lo, hi = W.lo - 1, W.hi
    comps, d, s = {}, {}, {}
    for m in range(lo, hi + 1):
        comps[m] = direct_sum(W.component(m), W.component(m + 1))
    for m in range(lo, hi + 1):
        a, b = W.component(m), W.component(m + 1)
        c = W.component(m + 2)
        d[m] = F.block([[W.d(m), b.act(W.w)], [F.zeros((c.dim, a.dim)), F.reduce(-W.d(m + 1))]])
        z = W.component(m - 1)
        s[m] = F.block([[F.zeros((z.dim, a.dim)), F.zeros((z.dim, b.dim))],
                        [F.eye(a.dim), F.zeros((a.dim, b.dim))]])
    return MixedComplex(S, V.w, comps, d, s, name=f"K(x)S^{shift}({V.name})")


class BarComplex:
    """Augmented ``... -> B_1 -> B_0 -> X`` with ``B_k = K (x)_S S^k X``.

    In internal degree ``m``, ``B_k^m = 1 (x) X^(m+k) + s (x) X^(m+k+1)`` and
    ``b_k(1 x x) = s x x + (-1)^k 1 x sx``, ``b_k(s x y) = (-1)^k s x sy``.
    """

    def __init__(self, X: MixedComplex, depth: int):
        if depth < 0:
            raise ValueError("depth must be >= 0")
        self.X = X
        self.depth = depth
        self.terms = [induce_koszul(X, k) for k in range(depth + 1)]

    def term_dims(self) -> list:
        return [B.total_dim for B in self.terms]

    def map(self, k: int, m: int) -> np.ndarray:
        """``b_k`` in internal degree ``m``; ``k = 0`` is the augmentation ``B_0 -> X``."""
        X = self.X
        F = X.field
        if k == 0:
            return np.concatenate([F.eye(X.component(m).dim), X.s(m + 1)], axis=1)
        sg = F.sign(k)
        x0, x1 = X.component(m + k), X.component(m + k + 1)
        y0 = X.component(m + k - 1)
        top = np.concatenate([F.reduce(sg * X.s(m + k)), F.zeros((y0.dim, x1.dim))], axis=1)
        bot = np.concatenate([F.eye(x0.dim), F.reduce(sg * X.s(m + k + 1))], axis=1)
        return np.concatenate([top, bot], axis=0)

    def composites_vanish(self, lo: int, hi: int) -> bool:
        F = self.X.field
        return all(F.is_zero(F.mul(self.map(k, m), self.map(k + 1, m)))
                   for m in range(lo, hi + 1) for k in range(self.depth))

    def exactness(self, lo: int, hi: int) -> dict:
        """``{(position, m): homology dim}``; position ``-1`` is ``X`` itself."""
        F = self.X.field
        out = {}
        for m in range(lo, hi + 1):
            out[(-1, m)] = self.X.component(m).dim - F.rank(self.map(0, m))
            for j in range(self.depth):
                dim = self.terms[j].component(m).dim
                ker = dim - F.rank(self.map(j, m))
                out[(j, m)] = ker - F.rank(self.map(j + 1, m))
        return out

    def is_acyclic_on(self, lo: int, hi: int) -> bool:
        return all(v == 0 for v in self.exactness(lo, hi).values())


def bar_complex(X: MixedComplex, depth: int) -> BarComplex:
    return BarComplex(X, depth)


# -- the completed bar resolution --------------------------------------------------

def _prod_layout(X: MixedComplex, ks):
    offs = {}
    o = 0
    for k in ks:
        offs[k] = o
        o += X.component(k).dim
    return offs, o


def _bprod_ks(X: MixedComplex, n: int):
    return [k for k in X.support() if k >= n]


def completed_bar(X: MixedComplex) -> TameComplex:
    """Closed form of ``Bprod X``: window ``[a-5, b+1]``, periodic below, zero above."""
    F = X.field
    S = X.S
    if not X.comps:
        z = FinModule.zero(S)
        return TameComplex(S, X.w, 0, 0, {0: z}, {}, {}, name="Bprod(0)")
    a, b = X.lo, X.hi
    lo, hi = a - 5, b + 1
    comps, d, s = {}, {}, {}
    for n in range(lo, hi + 1):
        ks = _bprod_ks(X, n)
        comps[n] = direct_sum(*[X.comps[k] for k in ks]) if ks else FinModule.zero(S)
    for n in range(lo, hi + 1):
        src_ks = _bprod_ks(X, n)
        so, sdim = _prod_layout(X, src_ks)
        if n < hi:
            tk = _bprod_ks(X, n + 1)
            to, tdim = _prod_layout(X, tk)
            m = F.zeros((tdim, sdim))
            for k in src_ks:
                Xk = X.comps[k]
                cs = slice(so[k], so[k] + Xk.dim)
                if (k - n) % 2 == 0:
                    pieces = {k + 1: X.d(k), k - 1: X.s(k), k: F.reduce(-F.eye(Xk.dim))}
                else:
                    pieces = {k: Xk.act(X.w), k + 1: F.reduce(-X.d(k)), k - 1: F.reduce(-X.s(k))}
                for t, mat in pieces.items():
                    if t in to:
                        rs = slice(to[t], to[t] + X.comps[t].dim)
                        m[rs, cs] = F.add(m[rs, cs], mat)
            d[n] = m
        if n > lo:
            tk = _bprod_ks(X, n - 1)
            to, tdim = _prod_layout(X, tk)
            m = F.zeros((tdim, sdim))
            for k in src_ks:
                if (k - n) % 2 == 0:
                    Xk = X.comps[k]
                    m[to[k]:to[k] + Xk.dim, so[k]:so[k] + Xk.dim] = F.eye(Xk.dim)
            s[n] = m
    return TameComplex(S, X.w, lo, hi, comps, d, s, "periodic2", "zero", name=f"Bprod({X.name})")


def bprod_augmentation(X: MixedComplex, n: int) -> np.ndarray:
    """``q_n: (Bprod X)^n -> X^n``, ``q(x) = x_n + s x_(n+1)``."""
    F = X.field
    ks = _bprod_ks(X, n)
    offs, dim = _prod_layout(X, ks)
    q = F.zeros((X.component(n).dim, dim))
    if n in offs:
        q[:, offs[n]:offs[n] + X.comps[n].dim] = F.eye(X.comps[n].dim)
    if n + 1 in offs:
        q[:, offs[n + 1]:offs[n + 1] + X.comps[n + 1].dim] = X.s(n + 1)
    return q


def default_sign(k: int, a_parity: int) -> int:
    """Exponent of the sign identifying ``S^k(K (x) S^k X)`` with ``K (x) S^2k X``."""
    return k * a_parity + k * (k + 1) // 2


def totalization(X: MixedComplex, n: int, sign=default_sign):
    """``(D_n, s_n)`` of the product totalization of the bar complex in degree ``n``,
    expressed in the closed-form coordinates through ``sign``.

    Block ``k`` of degree ``n`` is ``(S^k B_k)^n = 1 (x) X^(n+2k) + s (x) X^(n+2k+1)``.
    """
    F = X.field

    def blocks(deg):
        out = []
        k = 0
        while deg + 2 * k <= X.hi:
            out.append(k)
            k += 1
        return out

    def coord_index(deg):
        ks = _bprod_ks(X, deg)
        return _prod_layout(X, ks)

    def sign_diag(deg):
        offs, dim = coord_index(deg)
        diag = F.zeros(dim)
        for k in blocks(deg):
            for j, par in ((deg + 2 * k, 0), (deg + 2 * k + 1, 1)):
                if j in offs:
                    diag[offs[j]:offs[j] + X.comps[j].dim] = F.sign(sign(k, par))
        return diag

    def place(mat_rows, mat_cols, block, deg_r, deg_c, rj, cj):
        ro, _ = coord_index(deg_r)
        co, _ = coord_index(deg_c)
        if rj in ro and cj in co:
            rs = slice(ro[rj], ro[rj] + X.comps[rj].dim)
            cs = slice(co[cj], co[cj] + X.comps[cj].dim)
            mat_rows[rs, cs] = F.add(mat_rows[rs, cs], block)

    so, sdim = coord_index(n)
    to, tdim = coord_index(n + 1)
    D = F.zeros((tdim, sdim))
    for k in blocks(n):
        sg = F.sign(k)
        x_j, y_j = n + 2 * k, n + 2 * k + 1  # 1 (x) X^x_j and s (x) X^y_j
        # internal differential of S^k B_k is (-1)^k times that of B_k, which uses d of S^k X = (-1)^k d
        # d(1 x x) = 1 x dx ; d(s x y) = 1 x wy - s x dy
        place(D, None, F.reduce(sg * sg * X.d(x_j)), n + 1, n, x_j + 1, x_j)
        if y_j in X.comps:
            place(D, None, F.reduce(sg * X.comps[y_j].act(X.w)), n + 1, n, y_j, y_j)
        place(D, None, F.reduce(-sg * sg * X.d(y_j)), n + 1, n, y_j + 1, y_j)
        # bar map b_k into block k-1 of degree n+1
        if k >= 1:
            place(D, None, F.reduce(sg * X.s(x_j)), n + 1, n, x_j - 1, x_j)
            if x_j in X.comps:
                place(D, None, F.eye(X.comps[x_j].dim), n + 1, n, x_j, x_j)
            place(D, None, F.reduce(sg * X.s(y_j)), n + 1, n, y_j - 1, y_j)
    Ds = F.reduce(sign_diag(n + 1)[:, None] * D * sign_diag(n)[None, :])
    # s on S^k B_k is (-1)^k s_(B_k): 1 x x -> s x x lands in block k of degree n-1
    po, pdim = coord_index(n - 1)
    Sm = F.zeros((pdim, sdim))
    for k in blocks(n):
        x_j = n + 2 * k
        if x_j in X.comps:
            place(Sm, None, F.reduce(F.sign(k) * F.eye(X.comps[x_j].dim)), n - 1, n, x_j, x_j)
    Ss = F.reduce(sign_diag(n - 1)[:, None] * Sm * sign_diag(n)[None, :])
    return Ds, Ss


def completed_bar_crosscheck(X: MixedComplex, sign=default_sign, lo: int | None = None,
                             hi: int | None = None) -> dict:
    """Compare the closed form with the totalization degree by degree."""
    F = X.field
    B = completed_bar(X)
    lo = B.lo if lo is None else lo
    hi = B.hi if hi is None else hi
    mismatches = []
    for n in range(lo, hi + 1):
        D, Sm = totalization(X, n, sign)
        if not F.equal(D, B.d(n)):
            mismatches.append(("d", n))
        if not F.equal(Sm, B.s(n)):
            mismatches.append(("s", n))
    return {"equal": not mismatches, "mismatches": mismatches, "window": (lo, hi)}


# -- the epimorphism alpha and its filtration ---------------------------------------

def sbar_fold_coords(X: MixedComplex, Xf: Duplex, n: int) -> dict:
    """Offset of each ``X^k`` inside ``sbar(fold X)^n``."""
    first = Xf.part(n).dim
    out = {}
    for k in X.support():
        base = 0 if (k - n) % 2 == 0 else first
        out[k] = base + Xf.layout["offsets"][k]
    return out


def _coord_projection(X: MixedComplex, src_offs: dict, src_dim: int, ks) -> np.ndarray:
    F = X.field
    offs, dim = _prod_layout(X, ks)
    P = F.zeros((dim, src_dim))
    for k in ks:
        m = X.comps[k].dim
        P[offs[k]:offs[k] + m, src_offs[k]:src_offs[k] + m] = F.eye(m)
    return P


@dataclass
class AlphaData:
    X: MixedComplex
    source: TameComplex  # sbar(fold X)
    target: TameComplex  # Bprod X
    alpha: dict  # n -> matrix
    kernel: TameComplex
    window: tuple
    surjective: bool
    is_morphism: bool
    kernel_dims_ok: bool
    filtration: list = dc_field(default_factory=list)


def alpha_maps(X: MixedComplex, lo: int, hi: int) -> dict:
    Xf = fold(X)
    out = {}
    for n in range(lo, hi + 1):
        offs = sbar_fold_coords(X, Xf, n)
        out[n] = _coord_projection(X, offs, Xf.M0.dim + Xf.M1.dim, _bprod_ks(X, n))
    return out


def kernel_alpha(X: MixedComplex, source: TameComplex, Xf: Duplex) -> TameComplex:
    """``ker(alpha)^n = prod_{k<n} X^k``: window ``[a, b+6]``, zero below, periodic above."""
    F = X.field
    S = X.S
    a, b = X.lo, X.hi
    lo, hi = a, b + 6
    comps, d, s, inc = {}, {}, {}, {}
    for n in range(lo - 1, hi + 2):
        ks = [k for k in X.support() if k < n]
        comps[n] = direct_sum(*[X.comps[k] for k in ks]) if ks else FinModule.zero(S)
        offs = sbar_fold_coords(X, Xf, n)
        inc[n] = _coord_projection(X, offs, Xf.M0.dim + Xf.M1.dim, ks).T.copy()
    for n in range(lo, hi + 1):
        if n < hi:
            d[n] = F.coords(inc[n + 1], F.mul(source.d(n), inc[n])) if comps[n].dim and comps[n + 1].dim \
                else F.zeros((comps[n + 1].dim, comps[n].dim))
        if n > lo:
            s[n] = F.coords(inc[n - 1], F.mul(source.s(n), inc[n])) if comps[n].dim and comps[n - 1].dim \
                else F.zeros((comps[n - 1].dim, comps[n].dim))
    return TameComplex(S, X.w, lo, hi, {n: comps[n] for n in range(lo, hi + 1)}, d, s, "zero", "periodic2",
                       name=f"ker alpha({X.name})")


def filtration_quotient(X: MixedComplex, source: TameComplex, Xf: Duplex, i: int) -> MixedComplex:
    """``F_i / F_(i+1)`` with ``F_i^n = prod_{k < n-2i} X^k``: coordinates ``k in {n-2i-2, n-2i-1}``."""
    F = X.field
    S = X.S
    if not X.comps:
        return MixedComplex.zero(S, X.w)
    lo, hi = X.lo + 2 * i + 1, X.hi + 2 * i + 2
    comps, d, s, inc = {}, {}, {}, {}
    for n in range(lo - 1, hi + 2):
        ks = [k for k in (n - 2 * i - 2, n - 2 * i - 1) if k in X.comps]
        comps[n] = direct_sum(*[X.comps[k] for k in ks]) if ks else FinModule.zero(S)
        offs = sbar_fold_coords(X, Xf, n)
        inc[n] = _coord_projection(X, offs, Xf.M0.dim + Xf.M1.dim, ks)
    for n in range(lo, hi + 1):
        # the quotient map is the coordinate projection; the inclusion of the coordinates is its transpose
        d[n] = F.chain(inc[n + 1], source.d(n), inc[n].T)
        s[n] = F.chain(inc[n - 1], source.s(n), inc[n].T)
    return MixedComplex(S, X.w, comps, d, s, name=f"F_{i}/F_{i + 1}({X.name})")


def find_mixed_isomorphism(A: MixedComplex, B: MixedComplex, rng=None):
    """``(verdict, iso)`` between mixed complexes via the morphism space search."""
    Ac, Bc = A.to_cdg(), B.to_cdg()
    if not np.array_equal(np.sort(Ac.degrees), np.sort(Bc.degrees)):
        return False, None
    if Ac.dim == 0:
        return True, Ac.field.zeros((0, 0))
    basis = morphism_space(Ac, Bc)
    return find_invertible(A.field, basis, rng)


def alpha_epi(X: MixedComplex, depth: int = 2, rng=None) -> AlphaData:
    """``alpha: sbar(fold_prod X) -> Bprod X`` with kernel and filtration isomorphisms."""
    F = X.field
    Xf = fold(X)
    src = sbar(Xf)
    tgt = completed_bar(X)
    if not X.comps:
        return AlphaData(X, src, tgt, {}, tgt, (0, 0), True, True, True, [])
    lo, hi = X.lo - 4, X.hi + 2
    alpha = alpha_maps(X, lo - 1, hi + 1)
    surj = all(F.rank(alpha[n]) == tgt.component(n).dim for n in range(lo, hi + 1))
    morph = True
    for n in range(lo, hi + 1):
        if not F.equal(F.mul(tgt.d(n), alpha[n]), F.mul(alpha[n + 1], src.d(n))):
            morph = False
        if not F.equal(F.mul(tgt.s(n), alpha[n]), F.mul(alpha[n - 1], src.s(n))):
            morph = False
    ker = kernel_alpha(X, src, Xf)
    kdims = all(ker.component(n).dim == src.component(n).dim - F.rank(alpha[n]) for n in range(lo, hi + 1))
    filt = []
    for i in range(depth + 1):
        Q = filtration_quotient(X, src, Xf, i)
        target = induce_koszul(X, -2 * i - 2)
        verdict, iso = find_mixed_isomorphism(Q, target, rng)
        filt.append({"n": i, "quotient": Q, "model": target, "verdict": verdict, "iso": iso})
    return AlphaData(X, src, tgt, alpha, ker, (lo, hi), surj, morph, kdims, filt)


def counit_factorization_check(X: MixedComplex) -> bool:
    """``eps_X = q o alpha`` on the window ``[a-4, b+2]``."""
    F = X.field
    if not X.comps:
        return True
    eps = counit_prod(X)
    lo, hi = X.lo - 4, X.hi + 2
    alpha = alpha_maps(X, lo, hi)
    Xf = fold(X)
    for n in range(lo, hi + 1):
        e = eps.get(n)
        if e is None:
            e = F.zeros((0, Xf.M0.dim + Xf.M1.dim))
        if not F.equal(e, F.mul(bprod_augmentation(X, n), alpha[n])):
            return False
    return True


# -- model-class tests for mixed complexes -------------------------------------------

def mixed_model_class_test(X: MixedComplex) -> dict:
    """Cofibrant: ``(X, s)`` contractible and each ``X^k`` projective.
    Fibrant (absolute): ``(X, d)`` acyclic on the support widened by one."""
    contractible, h = is_contractible(X.s_complex())
    proj = all(is_projective(X.comps[k]) for k in X.support())
    T = X.as_tame()
    acyclic, hdims = is_acyclic_on(T, T.lo - 1, T.hi + 1) if X.comps else (True, {})
    return {"ctr_sing_cofibrant": bool(contractible and proj), "ctr_sing_fibrant_abs": bool(acyclic),
            "s_contractible": bool(contractible), "componentwise_projective": bool(proj),
            "cohomology": hdims, "witness": h}
