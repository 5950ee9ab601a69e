"""Graded and curved dg rings and modules over finite-dimensional algebras.

A module is stored in *total* form: a degree label per basis vector, one
action matrix per algebra basis element and a single differential
matrix.  Homogeneity is an invariant checked by the validators.  Sign
conventions:

* Leibniz: ``d(a x) = d(a) x + (-1)^|a| a d(x)`` and ``d^2 = w``.
* Suspension: ``(S^n X)^k = X^(k+n)``, ``d`` scaled by ``(-1)^n`` and the
  action of ``a`` by ``(-1)^(|a| n)``.
* Degree ``k`` maps satisfy ``f(a x) = (-1)^(|a| k) a f(x)`` and the
  hom differential is ``d f = d_Y f - (-1)^k f d_X``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import FinAlgebra, FinModule, combine
from .field import Field
from .modules import flatten, is_injective, is_projective, solve_intertwiners


# -- grading groups ------------------------------------------------------

@dataclass(frozen=True)
class GradingGroup:
    kind: str  # "Z" or "Z2"

    def __post_init__(self):
        if self.kind not in ("Z", "Z2"):
            raise ValueError(f"unsupported grading group {self.kind!r}")

    @property
    def one(self) -> int:
        return 1

    def normalize(self, d):
        return np.mod(d, 2) if self.kind == "Z2" else d

    def parity(self, d):
        return np.mod(d, 2)

    def __str__(self):
        return "Z" if self.kind == "Z" else "Z/2"


Z = GradingGroup("Z")
Z2 = GradingGroup("Z2")


# -- rings -----------------------------------------------------------------

class GradedAlgebra:
    """A FinAlgebra with a homogeneous basis; ``degrees[i] = |e_i|``."""

    def __init__(self, algebra: FinAlgebra, degrees, grading: GradingGroup = Z):
        self.algebra = algebra
        self.grading = grading
        self.degrees = grading.normalize(np.asarray(degrees, dtype=np.int64).reshape(algebra.dim))
        self.parities = grading.parity(self.degrees)

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def check(self) -> list[str]:
        out = []
        A = self.algebra
        unit_support = np.nonzero(A.unit)[0]
        if np.any(self.degrees[unit_support] != 0):
            out.append("unit is not in degree 0")
        for i in range(A.dim):
            for j in range(A.dim):
                support = np.nonzero(A.mult[i, j])[0]
                target = self.grading.normalize(self.degrees[i] + self.degrees[j])
                if np.any(self.degrees[support] != target):
                    out.append(f"e{i} e{j} is not homogeneous of degree {target}")
        return out

    def components(self) -> dict:
        return {int(d): np.nonzero(self.degrees == d)[0] for d in np.unique(self.degrees)}


class CdgRing:
    """Graded algebra with a degree +1 derivation and a degree 2 curvature.

    ``diff[:, i]`` holds the coordinates of ``d(e_i)``.
    """

    def __init__(self, base: GradedAlgebra, diff=None, curvature=None, *, name: str = "",
                 validate: bool = True):
        self.base = base
        F = base.field
        n = base.dim
        self.diff = F.zeros((n, n)) if diff is None else F.array(diff).reshape(n, n)
        self.curvature = F.zeros(n) if curvature is None else F.array(curvature).reshape(n)
        self.name = name
        if validate:
            problems = self.check()
            if problems:
                raise ValueError(f"cdg ring {name or '?'} fails axioms: {problems[:3]}")

    def __repr__(self):
        return f"CdgRing({self.name or '?'}, dim={self.dim}, graded by {self.grading})"

    # shorthands
    @property
    def algebra(self) -> FinAlgebra:
        return self.base.algebra

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def grading(self) -> GradingGroup:
        return self.base.grading

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def degrees(self) -> np.ndarray:
        return self.base.degrees

    @property
    def parities(self) -> np.ndarray:
        return self.base.parities

    @property
    def generators(self):
        return self.algebra.generators

    def check(self) -> list[str]:
        F = self.field
        A = self.algebra
        G = self.grading
        out = list(self.base.check())
        deg = self.degrees
        for i in range(self.dim):
            support = np.nonzero(self.diff[:, i])[0]
            if np.any(deg[support] != G.normalize(deg[i] + 1)):
                out.append(f"d(e{i}) is not of degree |e{i}|+1")
        wsup = np.nonzero(self.curvature)[0]
        if np.any(deg[wsup] != G.normalize(2)):
            out.append("curvature is not of degree 2")
        if not F.is_zero(F.mul(self.diff, self.curvature)):
            out.append("d(w) != 0")
        L = A.left
        R = A.right
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = F.mul(self.diff, A.mult[i, j])
                rhs = F.add(F.mul(R[j], self.diff[:, i]),
                            F.sign(int(self.parities[i])) * F.mul(L[i], self.diff[:, j]))
                if not F.equal(lhs, F.reduce(rhs)):
                    out.append(f"Leibniz fails on (e{i}, e{j})")
        dd = F.mul(self.diff, self.diff)
        comm = F.sub(combine(F, self.curvature, A.left), combine(F, self.curvature, A.right))
        if not F.equal(dd, comm):
            out.append("d^2 != [w, -]")
        return out

    def element_diff(self, a) -> np.ndarray:
        return self.field.mul(self.diff, a)

    # -- constructors -------------------------------------------------
    @classmethod
    def ring_as_dg(cls, R: FinAlgebra, name: str = "") -> "CdgRing":
        return cls(GradedAlgebra(R, np.zeros(R.dim, dtype=np.int64), Z), name=name or R.name)

    @classmethod
    def koszul(cls, S: FinAlgebra, w, name: str = "") -> "CdgRing":
        """``S[s]/(s^2)`` with ``|s| = -1`` and ``d(s) = w``; basis ``e_i`` then ``e_i s``."""
        F = S.field
        w = F.array(w).reshape(S.dim)
        if not S.is_central(w):
            raise ValueError("w is not central in S")
        n = S.dim
        mult = F.zeros((2 * n, 2 * n, 2 * n))
        mult[:n, :n, :n] = S.mult
        mult[:n, n:, n:] = S.mult
        mult[n:, :n, n:] = S.mult
        unit = np.concatenate([S.unit, F.zeros(n)])
        gens = list(S.generators) + [n]
        A = FinAlgebra(F, mult, unit, generators=gens, name=name or f"K({S.name})")
        diff = F.zeros((2 * n, 2 * n))
        # d(e_i s) = e_i w
        for i in range(n):
            diff[:n, n + i] = S.multiply(S.basis_vector(i), w)
        degrees = np.array([0] * n + [-1] * n, dtype=np.int64)
        ring = cls(GradedAlgebra(A, degrees, Z), diff, name=A.name)
        ring.koszul_base = S
        ring.koszul_w = w
        return ring

    @classmethod
    def curved_two_periodic(cls, S: FinAlgebra, w, name: str = "") -> "CdgRing":
        F = S.field
        w = F.array(w).reshape(S.dim)
        if not S.is_central(w):
            raise ValueError("w is not central in S")
        ring = cls(GradedAlgebra(S, np.zeros(S.dim, dtype=np.int64), Z2), None, w,
                   name=name or f"{S.name}_w")
        ring.koszul_base = S
        ring.koszul_w = w
        return ring


def dg_ring(R: FinAlgebra) -> CdgRing:
    """``ring_as_dg(R)``, cached on ``R`` so that complexes over ``R`` share one ring."""
    ring = getattr(R, "_dg_ring", None)
    if ring is None:
        ring = CdgRing.ring_as_dg(R)
        R._dg_ring = ring
    return ring


# -- modules ---------------------------------------------------------------

class GradedModule:
    """Graded module over ``ring.base`` in total form."""

    def __init__(self, ring: CdgRing, degrees, action, *, name: str = "", validate: bool = True):
        self.ring = ring
        F = ring.field
        self.degrees = ring.grading.normalize(np.asarray(degrees, dtype=np.int64).reshape(-1))
        N = self.degrees.size
        action = F.array(action)
        if action.size == 0:
            action = F.zeros((ring.dim, N, N))
        if action.shape != (ring.dim, N, N):
            raise ValueError(f"action must have shape ({ring.dim}, {N}, {N}), got {action.shape}")
        self.action = action
        self.name = name
        if validate:
            problems = GradedModule.check(self)
            if problems:
                raise ValueError(f"graded module {name or '?'} invalid: {problems[:3]}")

    def __repr__(self):
        return f"{type(self).__name__}({self.name or '?'}, dims={self.dims()})"

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def dim(self) -> int:
        return self.degrees.size

    def indices(self, d) -> np.ndarray:
        return np.nonzero(self.degrees == self.ring.grading.normalize(d))[0]

    def support(self) -> list[int]:
        return sorted(int(d) for d in np.unique(self.degrees))

    def dims(self) -> dict:
        return {d: int(np.sum(self.degrees == d)) for d in self.support()}

    def act(self, a) -> np.ndarray:
        return combine(self.field, a, self.action)

    def underlying(self) -> FinModule:
        return FinModule(self.ring.algebra, self.action, name=self.name, validate=False)

    def grading_mask(self, shift: int) -> np.ndarray:
        """``mask[i, j]`` true when ``|b_i| = |b_j| + shift``."""
        G = self.ring.grading
        return self.degrees[:, None] == G.normalize(self.degrees[None, :] + shift)

    def check(self) -> list[str]:
        out = [f"module: {p}" for p in self.underlying().check()]
        for i in range(self.ring.dim):
            bad = np.nonzero((self.action[i] != 0) & ~self.grading_mask(int(self.ring.degrees[i])))
            for r, c in zip(*bad):
                out.append(f"grading: action of e{i} cell ({r},{c})")
        return out

    def sharp(self) -> "GradedModule":
        return self


class CdgModule(GradedModule):
    """Graded module with a degree +1 differential ``diff`` satisfying Leibniz and ``d^2 = w``."""

    def __init__(self, ring: CdgRing, degrees, action, diff, *, name: str = "", validate: bool = True):
        super().__init__(ring, degrees, action, name=name, validate=False)
        F = ring.field
        diff = F.array(diff)
        if diff.size == 0:
            diff = F.zeros((self.dim, self.dim))
        if diff.shape != (self.dim, self.dim):
            raise ValueError(f"diff must be {self.dim}x{self.dim}, got {diff.shape}")
        self.diff = diff
        if validate:
            problems = self.check()
            if problems:
                raise ValueError(f"cdg module {name or '?'} invalid: {problems[:3]}")

    def check(self) -> list[str]:
        return validate_cdg_module(self)

    def sharp(self) -> GradedModule:
        return GradedModule(self.ring, self.degrees, self.action, name=f"{self.name}#", validate=False)

    def equals(self, other: "CdgModule") -> bool:
        F = self.field
        return (other.ring is self.ring and np.array_equal(self.degrees, other.degrees)
                and F.equal(self.action, other.action) and F.equal(self.diff, other.diff))

    @classmethod
    def zero(cls, ring: CdgRing) -> "CdgModule":
        F = ring.field
        return cls(ring, np.zeros(0, dtype=np.int64), F.zeros((ring.dim, 0, 0)), F.zeros((0, 0)),
                   name="0", validate=False)

    @classmethod
    def regular(cls, ring: CdgRing) -> "CdgModule":
        """The ring over itself, with the ring differential."""
        return cls(ring, ring.degrees, ring.algebra.left, ring.diff, name=ring.name)


def validate_cdg_module(X: CdgModule) -> list[str]:
    """Every violated cell of the grading, module, Leibniz and curvature identities."""
    F = X.field
    R = X.ring
    out = GradedModule.check(X)
    bad = np.nonzero((X.diff != 0) & ~X.grading_mask(1))
    for r, c in zip(*bad):
        out.append(f"grading: diff cell ({r},{c})")
    for i in range(R.dim):
        lhs = F.mul(X.diff, X.action[i])
        rhs = F.add(X.act(R.diff[:, i]), F.sign(int(R.parities[i])) * F.mul(X.action[i], X.diff))
        for r, c in zip(*np.nonzero(F.sub(lhs, F.reduce(rhs)))):
            out.append(f"leibniz: e{i} cell ({r},{c})")
    curv = F.sub(F.mul(X.diff, X.diff), X.act(R.curvature))
    for r, c in zip(*np.nonzero(curv)):
        out.append(f"curvature: cell ({r},{c})")
    return out


def graded_direct_sum(*mods):
    ring = mods[0].ring
    F = ring.field
    degrees = np.concatenate([m.degrees for m in mods]) if mods else np.zeros(0, dtype=np.int64)
    action = np.stack([F.direct_sum(*[m.action[i] for m in mods]) for i in range(ring.dim)])
    name = "+".join(m.name or "?" for m in mods)
    if all(isinstance(m, CdgModule) for m in mods):
        return CdgModule(ring, degrees, action, F.direct_sum(*[m.diff for m in mods]), name=name,
                         validate=False)
    return GradedModule(ring, degrees, action, name=name, validate=False)


def graded_submodule(X: GradedModule, cols):
    """Structure on the span of homogeneous independent columns ``cols`` (invariant)."""
    F = X.field
    cols = F.array(cols)
    k = cols.shape[1]
    degs = np.array([int(X.degrees[np.nonzero(cols[:, j])[0][0]]) for j in range(k)], dtype=np.int64)
    if k == 0:
        return (CdgModule.zero(X.ring) if isinstance(X, CdgModule)
                else GradedModule(X.ring, degs, F.zeros((X.ring.dim, 0, 0)), validate=False))
    mats = [X.action[i] for i in range(X.ring.dim)]
    if isinstance(X, CdgModule):
        mats.append(X.diff)
    images = np.concatenate([F.mul(m, cols) for m in mats], axis=1)
    coords = F.coords(cols, images)
    blocks = [coords[:, t * k:(t + 1) * k] for t in range(len(mats))]
    if isinstance(X, CdgModule):
        return CdgModule(X.ring, degs, np.stack(blocks[:-1]), blocks[-1], name=f"sub({X.name})",
                         validate=False)
    return GradedModule(X.ring, degs, np.stack(blocks), name=f"sub({X.name})", validate=False)


def homogeneous_kernel(phi, X: GradedModule, Y: GradedModule) -> np.ndarray:
    """Columns spanning ``ker(phi)`` chosen degree by degree."""
    F = X.field
    cols = []
    for d in X.support():
        ix = X.indices(d)
        iy = Y.indices(d)
        sub = phi[np.ix_(iy, ix)] if iy.size else F.zeros((0, ix.size))
        null = F.nullspace(sub)
        for t in range(null.shape[1]):
            v = F.zeros(X.dim)
            v[ix] = null[:, t]
            cols.append(v)
    return np.stack(cols, axis=1) if cols else F.zeros((X.dim, 0))


# -- suspension, forgetful functor, G+ / G- ---------------------------------

def suspend(X: GradedModule, n: int):
    """``S^n X``: degrees lowered by ``n``, signs as in the module docstring."""
    F = X.field
    R = X.ring
    signs = [F.sign(int(R.parities[i]) * n) for i in range(R.dim)]
    action = np.stack([F.reduce(signs[i] * X.action[i]) for i in range(R.dim)]) if X.dim \
        else X.action.copy()
    degrees = X.degrees - n
    name = f"S^{n}({X.name})"
    if isinstance(X, CdgModule):
        return CdgModule(R, degrees, action, F.reduce(F.sign(n) * X.diff), name=name, validate=False)
    return GradedModule(R, degrees, action, name=name, validate=False)


def sharp(X: CdgModule) -> GradedModule:
    return X.sharp()


def g_plus(Z: GradedModule) -> CdgModule:
    """``G+(Z) = Z + dZ`` with ``a (x + dy) = ax - (-1)^|a| d(a) y + (-1)^|a| d(ay)``
    and differential ``x + dy -> wy + dx``.  Basis: ``x``-part then ``y``-part."""
    R = Z.ring
    F = Z.field
    n = Z.dim
    zero = F.zeros((n, n))
    acts = []
    for i in range(R.dim):
        e = F.sign(int(R.parities[i]))
        A = Z.action[i]
        dA = Z.act(R.diff[:, i])
        acts.append(F.block([[A, F.reduce(-e * dA)], [zero, F.reduce(e * A)]]))
    action = np.stack(acts) if n else F.zeros((R.dim, 0, 0))
    diff = F.block([[zero, Z.act(R.curvature)], [F.eye(n), zero]])
    degrees = np.concatenate([Z.degrees, Z.degrees + 1])
    return CdgModule(R, degrees, action, diff, name=f"G+({Z.name})", validate=False)


def g_minus(Z: GradedModule) -> CdgModule:
    return suspend(g_plus(Z), 1)


def gplus_to_sharp(phi, Z: GradedModule) -> np.ndarray:
    """Transpose of ``phi: G+(Z) -> X`` to ``Z -> X#``."""
    return np.asarray(phi)[:, :Z.dim].copy()


def sharp_to_gplus(psi, X: CdgModule) -> np.ndarray:
    """Transpose of ``psi: Z -> X#`` to ``G+(Z) -> X``: ``x + dy -> psi(x) + d psi(y)``."""
    F = X.field
    return np.concatenate([psi, F.mul(X.diff, psi)], axis=1)


def sharp_to_gminus(psi, X: CdgModule) -> np.ndarray:
    """Transpose of ``psi: X# -> Z`` to ``X -> G-(Z)``: ``x -> (-psi(dx), psi(x))``."""
    F = X.field
    return np.concatenate([F.reduce(-F.mul(psi, X.diff)), psi], axis=0)


def gminus_to_sharp(phi, Z: GradedModule) -> np.ndarray:
    return np.asarray(phi)[Z.dim:, :].copy()


def gplus_unit(Z: GradedModule) -> np.ndarray:
    """``Z -> G+(Z)#``."""
    return gplus_to_sharp(Z.field.eye(2 * Z.dim), Z)


def gplus_counit(X: CdgModule) -> np.ndarray:
    """``G+(X#) -> X``."""
    return sharp_to_gplus(X.field.eye(X.dim), X)


def gminus_unit(X: CdgModule) -> np.ndarray:
    """``X -> G-(X#)``."""
    return sharp_to_gminus(X.field.eye(X.dim), X)


def gminus_counit(Z: GradedModule) -> np.ndarray:
    """``G-(Z)# -> Z``."""
    return gminus_to_sharp(Z.field.eye(2 * Z.dim), Z)


def cone_id(X: CdgModule):
    """``(C, epi, h)``: ``C^k = X^(k-1) + X^k`` with ``d(b, a) = (a - db, da)``,
    ``epi(b, a) = a`` and contraction ``h(b, a) = (0, b)``."""
    R = X.ring
    F = X.field
    n = X.dim
    zero = F.zeros((n, n))
    acts = [F.block([[F.reduce(F.sign(int(R.parities[i])) * X.action[i]), zero], [zero, X.action[i]]])
            for i in range(R.dim)]
    action = np.stack(acts) if n else F.zeros((R.dim, 0, 0))
    diff = F.block([[F.reduce(-X.diff), F.eye(n)], [zero, X.diff]])
    degrees = np.concatenate([X.degrees + 1, X.degrees])
    C = CdgModule(R, degrees, action, diff, name=f"cone({X.name})", validate=False)
    epi = np.concatenate([zero, F.eye(n)], axis=1)
    h = F.block([[zero, zero], [F.eye(n), zero]])
    return C, epi, h


# -- hom complexes -----------------------------------------------------------

def _check_ring(X, Y):
    if X.ring is not Y.ring:
        raise ValueError(f"ring mismatch: {X.ring.name!r} vs {Y.ring.name!r}")


def graded_hom(X: GradedModule, Y: GradedModule, k: int) -> np.ndarray:
    """Basis of ``Hom_{A#}(X#, S^k Y#)`` as ``dim Y x dim X`` matrices of degree ``k``."""
    _check_ring(X, Y)
    R = X.ring
    F = X.field
    G = R.grading
    mask = Y.degrees[:, None] == G.normalize(X.degrees[None, :] + k)
    gens = list(R.generators)
    signs = [F.sign(int(R.parities[g]) * k) for g in gens]
    return solve_intertwiners(F, [X.action[g] for g in gens], [Y.action[g] for g in gens], signs, mask)


def hom_degrees(X: GradedModule, Y: GradedModule) -> list[int]:
    if X.ring.grading.kind == "Z2":
        return [0, 1]
    if X.dim == 0 or Y.dim == 0:
        return []
    return list(range(int(Y.degrees.min() - X.degrees.max()), int(Y.degrees.max() - X.degrees.min()) + 1))


def hom_differential(X: CdgModule, Y: CdgModule, f, k: int) -> np.ndarray:
    F = X.field
    return F.sub(F.mul(Y.diff, f), F.reduce(F.sign(k) * F.mul(f, X.diff)))


@dataclass
class HomComplex:
    source: CdgModule
    target: CdgModule
    degrees: list
    bases: dict  # k -> (dim, Ny, Nx)
    differentials: dict = dc_field(default_factory=dict)  # k -> matrix Hom^k -> Hom^(k+1) in coordinates

    def dim(self, k: int) -> int:
        b = self.bases.get(self._norm(k))
        return 0 if b is None else b.shape[0]

    def _norm(self, k):
        return k % 2 if self.source.ring.grading.kind == "Z2" else k

    def basis(self, k: int) -> np.ndarray:
        F = self.source.field
        b = self.bases.get(self._norm(k))
        return b if b is not None else F.zeros((0, self.target.dim, self.source.dim))

    def d(self, k: int) -> np.ndarray:
        F = self.source.field
        k = self._norm(k)
        m = self.differentials.get(k)
        return m if m is not None else F.zeros((self.dim(k + 1), self.dim(k)))

    def dims(self) -> dict:
        return {k: self.dim(k) for k in self.degrees}

    def d_squared_zero(self) -> bool:
        F = self.source.field
        return all(F.is_zero(F.mul(self.d(k + 1), self.d(k))) for k in self.degrees)

    def cohomology(self, k: int):
        """``(dim H^k, representatives)``."""
        F = self.source.field
        dk = self.d(k)
        dprev = self.d(k - 1)
        Zk = F.nullspace(dk) if self.dim(k) else F.zeros((0, 0))
        Bk = F.column_basis(dprev) if dprev.size else F.zeros((self.dim(k), 0))
        h = Zk.shape[1] - Bk.shape[1]
        if h == 0:
            return 0, F.zeros((0, self.target.dim, self.source.dim))
        comp_coords = F.complement_columns(F.coords(Zk, Bk) if Bk.shape[1] else Bk.reshape(Zk.shape[1], 0),
                                           Zk.shape[1])
        reps_coords = F.mul(Zk, comp_coords)
        B = self.basis(k)
        reps = np.stack([combine(F, reps_coords[:, t], B) for t in range(reps_coords.shape[1])])
        return h, reps


def dg_hom(X: CdgModule, Y: CdgModule) -> HomComplex:
    _check_ring(X, Y)
    F = X.field
    ks = hom_degrees(X, Y)
    bases = {k: graded_hom(X, Y, k) for k in ks}
    diffs = {}
    for k in ks:
        src = bases[k]
        knext = k + 1
        if X.ring.grading.kind == "Z2":
            knext %= 2
        tgt = bases.get(knext)
        if src.shape[0] == 0:
            continue
        images = np.stack([hom_differential(X, Y, f, k) for f in src])
        if tgt is None or tgt.shape[0] == 0:
            if not F.is_zero(images):
                raise AssertionError("hom differential leaves the computed support")
            continue
        diffs[k] = F.coords(flatten(tgt), flatten(images))
    return HomComplex(X, Y, ks, bases, diffs)


def homotopy_classes(X: CdgModule, Y: CdgModule, k: int):
    """``(dim [X, S^k Y], representatives)``."""
    return dg_hom(X, Y).cohomology(k)


def morphism_space(X: CdgModule, Y: CdgModule) -> np.ndarray:
    """Basis of closed degree 0 maps ``X -> Y`` (the cdg module morphisms)."""
    F = X.field
    B = graded_hom(X, Y, 0)
    if B.shape[0] == 0:
        return B
    images = np.stack([hom_differential(X, Y, f, 0) for f in B])
    null = F.nullspace(flatten(images))
    if null.shape[1] == 0:
        return F.zeros((0, Y.dim, X.dim))
    return np.stack([combine(F, null[:, t], B) for t in range(null.shape[1])])


def is_graded_map(f, X: GradedModule, Y: GradedModule, k: int = 0) -> bool:
    F = X.field
    R = X.ring
    f = np.asarray(f)
    if f.shape != (Y.dim, X.dim):
        return False
    G = R.grading
    mask = Y.degrees[:, None] == G.normalize(X.degrees[None, :] + k)
    if np.any((f != 0) & ~mask):
        return False
    return all(F.equal(F.mul(f, X.action[g]), F.reduce(F.sign(int(R.parities[g]) * k) * F.mul(Y.action[g], f)))
               for g in R.generators)


def is_morphism(f, X: CdgModule, Y: CdgModule) -> bool:
    F = X.field
    return is_graded_map(f, X, Y, 0) and F.equal(F.mul(Y.diff, f), F.mul(f, X.diff))


def is_contractible(X: CdgModule):
    """``(verdict, h)`` with ``d h + h d = id`` for a degree -1 map ``h`` when contractible."""
    F = X.field
    if X.dim == 0:
        return True, F.zeros((0, 0))
    B = graded_hom(X, X, -1)
    if B.shape[0] == 0:
        return False, None
    images = np.stack([hom_differential(X, X, h, -1) for h in B])
    c = F.solve(flatten(images), F.eye(X.dim).reshape(-1))
    if c is None:
        return False, None
    return True, combine(F, c, B)


def is_cdg_projective(X: CdgModule) -> bool:
    return is_projective(X.underlying()) and is_contractible(X)[0]


def is_cdg_injective(X: CdgModule) -> bool:
    return is_injective(X.underlying()) and is_contractible(X)[0]


# -- covers and a presentation-based Ext^1 -----------------------------------

def graded_free_cover(Z: GradedModule):
    """``(P, pi)``: a graded free module on homogeneous lifts of a basis of ``Z / rad Z``."""
    R = Z.ring
    F = Z.field
    A = R.algebra
    J = A.radical_basis
    if J.shape[1] and Z.dim:
        rad = F.column_basis(np.concatenate([Z.act(J[:, t]) for t in range(J.shape[1])], axis=1))
    else:
        rad = F.zeros((Z.dim, 0))
    span = rad
    gens = []
    for d in Z.support():
        for idx in Z.indices(d):
            v = F.zeros(Z.dim)
            v[idx] = F.one
            if F.in_span(span, v):
                continue
            gens.append((d, v))
            orbit = F.reduce(np.stack([F.mul(Z.action[i], v) for i in range(A.dim)], axis=1))
            span = F.column_basis(np.concatenate([span, orbit], axis=1))
    pieces = []
    cols = []
    for d, v in gens:
        pieces.append(GradedModule(R, R.degrees + d, A.left, validate=False))
        cols.append(np.stack([F.mul(Z.action[i], v) for i in range(A.dim)], axis=1))
    if not pieces:
        return GradedModule(R, np.zeros(0, dtype=np.int64), F.zeros((R.dim, 0, 0)), validate=False), \
            F.zeros((Z.dim, 0))
    return graded_direct_sum(*pieces), np.concatenate(cols, axis=1)


def cdg_presentation(X: CdgModule):
    """``(G+(P), phi, K, inc)``: projective ``G+(P) -> X`` onto ``X`` with kernel ``K``."""
    P, pi = graded_free_cover(X.sharp())
    G = g_plus(P)
    phi = sharp_to_gplus(pi, X)
    cols = homogeneous_kernel(phi, G, X)
    K = graded_submodule(G, cols)
    return G, phi, K, cols


def cdg_ext1(X: CdgModule, Y: CdgModule) -> int:
    """``Ext^1(X, Y)`` in the abelian category of cdg modules, from a projective presentation."""
    F = X.field
    G, phi, K, inc = cdg_presentation(X)
    HK = morphism_space(K, Y)
    if HK.shape[0] == 0:
        return 0
    HG = morphism_space(G, Y)
    if HG.shape[0] == 0:
        return HK.shape[0]
    restricted = flatten(np.stack([F.mul(h, inc) for h in HG]))
    return HK.shape[0] - F.rank(restricted)
