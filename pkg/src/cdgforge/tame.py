"""Z-graded Koszul modules with an explicit window and eventually periodic ends.

Over ``K = S[s]/(s^2)`` a module is a family of S-modules ``X^n`` with
``d: X^n -> X^(n+1)`` and ``s: X^n -> X^(n-1)`` such that ``d^2 = 0``,
``s^2 = 0`` and ``ds + sd = w``.  A :class:`TameComplex` stores such data
on ``[lo, hi]`` and extends it below and above by one of three rules.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FinAlgebra, FinModule

END_KINDS = {"zero": 0, "constant": 1, "periodic2": 2}


def _zero_module(S: FinAlgebra) -> FinModule:
    return FinModule.zero(S)


def laws_report(S: FinAlgebra, w, comp, d, s, lo: int, hi: int) -> list[str]:
    """Check the Koszul module laws at every degree whose inputs lie in ``[lo, hi]``.

    ``comp(n)``, ``d(n)`` and ``s(n)`` are callables returning the module and
    maps at ``n``; they must be defined on ``[lo - 1, hi + 1]``.
    """
    F = S.field
    out = []
    for n in range(lo, hi + 1):
        X = comp(n)
        Xu = comp(n + 1)
        Xd = comp(n - 1)
        dn = d(n)
        sn = s(n)
        if dn.shape != (Xu.dim, X.dim):
            out.append(f"shape: d^{n} is {dn.shape}, expected {(Xu.dim, X.dim)}")
            continue
        if sn.shape != (Xd.dim, X.dim):
            out.append(f"shape: s^{n} is {sn.shape}, expected {(Xd.dim, X.dim)}")
            continue
        for g in S.generators:
            if not F.equal(F.mul(dn, X.action[g]), F.mul(Xu.action[g], dn)):
                out.append(f"linearity: d^{n} vs e{g}")
            if not F.equal(F.mul(sn, X.action[g]), F.mul(Xd.action[g], sn)):
                out.append(f"linearity: s^{n} vs e{g}")
        if not F.is_zero(F.mul(d(n + 1), dn)):
            out.append(f"d^2 != 0 at {n}")
        if not F.is_zero(F.mul(s(n - 1), sn)):
            out.append(f"s^2 != 0 at {n}")
        lhs = F.add(F.mul(d(n - 1), sn), F.mul(s(n + 1), dn))
        if not F.equal(lhs, X.act(w)):
            out.append(f"ds + sd != w at {n}")
    return out


@dataclass
class Window:
    """Materialized data on ``[lo, hi]``; maps leaving the window are omitted."""

    lo: int
    hi: int
    comps: dict
    d: dict  # n -> X^n -> X^(n+1), lo <= n < hi
    s: dict  # n -> X^n -> X^(n-1), lo < n <= hi

    def dims(self) -> dict:
        return {n: self.comps[n].dim for n in range(self.lo, self.hi + 1)}

    def cohomology_dims(self) -> dict:
        """``dim H^n`` of ``(X, d)`` for ``lo < n < hi``."""
        F = next(iter(self.comps.values())).field
        out = {}
        for n in range(self.lo + 1, self.hi):
            dim = self.comps[n].dim
            ker = dim - F.rank(self.d[n]) if dim else 0
            img = F.rank(self.d[n - 1]) if self.d[n - 1].size else 0
            out[n] = ker - img
        return out


class TameComplex:
    """Explicit window plus ``zero`` / ``constant`` / ``periodic2`` end descriptors.

    ``d`` must be given for ``lo <= n < hi`` and ``s`` for ``lo < n <= hi``.
    A periodic end must already repeat inside the window, so that the
    extension is determined by (and agrees with) the explicit data.
    """

    def __init__(self, S: FinAlgebra, w, lo: int, hi: int, comps: dict, d: dict, s: dict,
                 below: str = "zero", above: str = "zero", *, name: str = "", validate: bool = True):
        if lo > hi:
            raise ValueError("empty window")
        for kind in (below, above):
            if kind not in END_KINDS:
                raise ValueError(f"malformed end descriptor {kind!r}")
        self.S = S
        self.w = S.field.array(w).reshape(S.dim)
        self.lo, self.hi = int(lo), int(hi)
        self.comps = dict(comps)
        self._d = dict(d)
        self._s = dict(s)
        self.below, self.above = below, above
        self.name = name
        problems = self.descriptor_report()
        if problems:
            raise ValueError(f"malformed descriptor for {name or '?'}: {problems[:3]}")
        if validate:
            problems = self.check(self.lo - 4, self.hi + 4)
            if problems:
                raise ValueError(f"tame complex {name or '?'} invalid: {problems[:3]}")

    def __repr__(self):
        return f"TameComplex({self.name or '?'}, window=[{self.lo},{self.hi}], {self.below}/{self.above})"

    @property
    def field(self):
        return self.S.field

    # -- descriptor handling ------------------------------------------
    def descriptor_report(self) -> list[str]:
        F = self.field
        out = []
        for n in range(self.lo, self.hi + 1):
            if n not in self.comps:
                out.append(f"missing component {n}")
        for n in range(self.lo, self.hi):
            if n not in self._d:
                out.append(f"missing d^{n}")
        for n in range(self.lo + 1, self.hi + 1):
            if n not in self._s:
                out.append(f"missing s^{n}")
        if out:
            return out
        for side, kind in (("below", self.below), ("above", self.above)):
            p = END_KINDS[kind]
            if p == 0:
                continue
            if self.hi - self.lo < 2 * p:
                out.append(f"{side}: window too short for {kind}")
                continue
            # the first (last) period must repeat inside the window
            ns = range(self.lo, self.lo + p + 1) if side == "below" else range(self.hi - 2 * p, self.hi - p + 1)
            for n in ns:
                if not self.comps[n].same_as(self.comps[n + p]):
                    out.append(f"{side}: component {n} does not repeat at {n + p}")
                    continue
                for key, table in (("d", self._d), ("s", self._s)):
                    a, b = table.get(n), table.get(n + p)
                    if a is not None and b is not None and not F.equal(a, b):
                        out.append(f"{side}: {key}^{n} does not repeat")
        return out

    def _reduce(self, n: int, need_lo: int, need_hi: int) -> int | None:
        """Shift ``n`` by a period so that ``[n + need_lo, n + need_hi]`` lies in the window."""
        if self.lo <= n + need_lo and n + need_hi <= self.hi:
            return n
        if n + need_lo < self.lo:
            p = END_KINDS[self.below]
            if p == 0:
                return None
            k = -(-(self.lo - (n + need_lo)) // p)
            return n + k * p
        p = END_KINDS[self.above]
        if p == 0:
            return None
        k = -(-((n + need_hi) - self.hi) // p)
        return n - k * p

    def component(self, n: int) -> FinModule:
        m = self._reduce(n, 0, 0)
        return _zero_module(self.S) if m is None else self.comps[m]

    def d(self, n: int) -> np.ndarray:
        m = self._reduce(n, 0, 1)
        if m is None:
            return self.field.zeros((self.component(n + 1).dim, self.component(n).dim))
        return self._d[m]

    def s(self, n: int) -> np.ndarray:
        m = self._reduce(n, -1, 0)
        if m is None:
            return self.field.zeros((self.component(n - 1).dim, self.component(n).dim))
        return self._s[m]

    def check(self, lo: int, hi: int) -> list[str]:
        return laws_report(self.S, self.w, self.component, self.d, self.s, lo, hi)


def window_eval(T: TameComplex, lo: int, hi: int) -> Window:
    if lo > hi:
        raise ValueError("window_eval needs lo <= hi")
    comps = {n: T.component(n) for n in range(lo, hi + 1)}
    d = {n: T.d(n) for n in range(lo, hi)}
    s = {n: T.s(n) for n in range(lo + 1, hi + 1)}
    return Window(lo, hi, comps, d, s)


def is_acyclic_on(T, lo: int, hi: int):
    """``(verdict, cohomology dims)`` for ``(T, d)`` in degrees strictly inside ``[lo, hi]``."""
    F = T.field
    for n in range(lo, hi - 1):
        if not F.is_zero(F.mul(T.d(n + 1), T.d(n))):
            raise ValueError(f"d^2 != 0 at degree {n}; not a complex on the window")
    W = window_eval(T, lo, hi)
    h = W.cohomology_dims()
    return all(v == 0 for v in h.values()), h
