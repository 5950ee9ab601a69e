"""Finite-dimensional algebras and their modules, given by explicit matrices."""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from .field import Field


class FinAlgebra:
    """Unital associative algebra with basis ``e_0..e_{n-1}``.

    ``mult[i, j, k]`` is the coefficient of ``e_k`` in ``e_i e_j``.  The
    radical and a complete set of primitive orthogonal idempotents are
    computed on demand; both may be supplied for algebras where the
    automatic routes do not apply (noncommutative ones in small
    characteristic).
    """

    def __init__(self, field: Field, mult, unit, *, generators: Sequence[int] | None = None,
                 name: str = "", radical=None, idempotents=None, validate: bool = True):
        self.field = field
        self.mult = field.array(mult)
        n = self.mult.shape[0]
        if self.mult.shape != (n, n, n) or n == 0:
            raise ValueError(f"structure constants must have shape (n, n, n) with n >= 1, got {self.mult.shape}")
        self.unit = field.array(unit).reshape(n)
        self.generators = tuple(range(n)) if generators is None else tuple(int(g) for g in generators)
        self.name = name
        self._radical = None if radical is None else field.array(radical).reshape(n, -1)
        self._idempotents = None if idempotents is None else [field.array(e).reshape(n) for e in idempotents]
        if validate:
            problems = self.check()
            if problems:
                raise ValueError(f"algebra {name or '?'} fails axioms: {problems[:3]}")

    def __repr__(self):
        return f"FinAlgebra({self.name or '?'}, dim={self.dim}, {self.field})"

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    @cached_property
    def left(self) -> np.ndarray:
        """``left[i]`` is the matrix of ``x -> e_i x``."""
        # left[i][k, j] = mult[i, j, k]
        return np.ascontiguousarray(np.transpose(self.mult, (0, 2, 1)))

    @cached_property
    def right(self) -> np.ndarray:
        """``right[j]`` is the matrix of ``x -> x e_j``."""
        return np.ascontiguousarray(np.transpose(self.mult, (1, 2, 0)))

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def element(self, coeffs) -> np.ndarray:
        return self.field.array(coeffs).reshape(self.dim)

    def left_matrix(self, a) -> np.ndarray:
        return _combine(self.field, a, self.left)

    def multiply(self, a, b) -> np.ndarray:
        return self.field.mul(self.left_matrix(a), self.field.array(b))

    def power(self, a, e: int) -> np.ndarray:
        result = self.unit.copy()
        base = self.field.array(a)
        while e:
            if e & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            e >>= 1
        return result

    def check(self) -> list[str]:
        F = self.field
        out = []
        L = self.left
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = F.mul(L[i], L[j])
                rhs = _combine(F, self.mult[i, j], L)
                if not F.equal(lhs, rhs):
                    out.append(f"associativity fails for (e{i} e{j}) x")
        if not F.equal(self.left_matrix(self.unit), F.eye(self.dim)):
            out.append("unit is not a left identity")
        if not F.equal(_combine(F, self.unit, self.right), F.eye(self.dim)):
            out.append("unit is not a right identity")
        return out

    @cached_property
    def is_commutative(self) -> bool:
        return self.field.equal(self.mult, np.transpose(self.mult, (1, 0, 2)))

    def is_central(self, a) -> bool:
        a = self.field.array(a)
        return all(
            self.field.equal(self.multiply(a, self.basis_vector(i)), self.multiply(self.basis_vector(i), a))
            for i in range(self.dim)
        )

    def opposite(self) -> "FinAlgebra":
        try:
            rad, idems = self.radical_basis, self.primitive_idempotents
        except NotImplementedError:
            rad = idems = None
        return FinAlgebra(self.field, np.transpose(self.mult, (1, 0, 2)), self.unit,
                          generators=self.generators, name=f"{self.name}^op", validate=False,
                          radical=rad, idempotents=idems)

    # -- radical and idempotents ---------------------------------------
    @cached_property
    def op(self) -> "FinAlgebra":
        return self.opposite()

    @cached_property
    def frobenius_matrix(self) -> np.ndarray:
        """Columns are coordinates of ``e_i^p`` (F_p-linear when commutative)."""
        F = self.field
        cols = [self.power(self.basis_vector(i), F.p) for i in range(self.dim)]
        return np.stack(cols, axis=1)

    @cached_property
    def radical_basis(self) -> np.ndarray:
        """Columns spanning the Jacobson radical."""
        if self._radical is not None:
            return self._radical
        F = self.field
        n = self.dim
        if F.p and self.is_commutative:
            phi = self.frobenius_matrix
            m = 1
            while F.p ** m < n:
                m += 1
            power = F.eye(n)
            for _ in range(m):
                power = F.mul(phi, power)
            return F.nullspace(power)
        if F.p == 0 or F.p > n:
            # trace form criterion: valid in characteristic 0 or > dim
            gram = F.zeros((n, n))
            L = self.left
            for i in range(n):
                for j in range(n):
                    gram[i, j] = F.scalar(np.trace(F.mul(L[i], L[j])))
            return F.nullspace(gram)
        raise NotImplementedError(
            f"radical of noncommutative algebra {self.name!r} in characteristic {F.p} <= dim must be declared")

    @cached_property
    def primitive_idempotents(self) -> list[np.ndarray]:
        if self._idempotents is not None:
            return self._idempotents
        F = self.field
        if self.dim - self.radical_basis.shape[1] == 1:
            return [self.unit.copy()]
        if F.p and self.is_commutative:
            return self._split_idempotents()
        raise NotImplementedError(
            f"primitive idempotents of {self.name!r} must be declared (non-local, not commutative over F_p)")

    def _split_idempotents(self) -> list[np.ndarray]:
        F = self.field
        fixed = F.nullspace(F.sub(self.frobenius_matrix, F.eye(self.dim)))
        idems = [self.unit.copy()]
        for col in range(fixed.shape[1]):
            b = fixed[:, col]
            refined = []
            for e in idems:
                be = self.multiply(b, e)
                pieces = []
                for lam in range(F.p):
                    shifted = F.sub(be, F.scale(lam, e))
                    ind = F.sub(e, self.multiply(e, self.power(shifted, F.p - 1)))
                    if not F.is_zero(ind):
                        pieces.append(ind)
                refined.extend(pieces)
            idems = refined
        return idems

    @cached_property
    def is_local(self) -> bool:
        return len(self.primitive_idempotents) == 1

    # -- constructors -------------------------------------------------
    @classmethod
    def truncated_polynomial(cls, field: Field, n: int, name: str = "") -> "FinAlgebra":
        """``k[x]/(x^n)`` with basis ``1, x, ..., x^{n-1}``."""
        mult = np.zeros((n, n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                if i + j < n:
                    mult[i, j, i + j] = 1
        unit = np.zeros(n, dtype=np.int64)
        unit[0] = 1
        gens = (1,) if n > 1 else (0,)
        return cls(field, mult, unit, generators=gens, name=name or f"k[x]/(x^{n})")

    @classmethod
    def product(cls, *algebras: "FinAlgebra", name: str = "") -> "FinAlgebra":
        F = algebras[0].field
        n = sum(a.dim for a in algebras)
        mult = F.zeros((n, n, n))
        unit = F.zeros(n)
        gens = []
        off = 0
        for a in algebras:
            d = a.dim
            mult[off:off + d, off:off + d, off:off + d] = a.mult
            unit[off:off + d] = a.unit
            gens.extend(off + i for i in range(d))
            off += d
        return cls(F, mult, unit, generators=gens, name=name or " x ".join(a.name for a in algebras))


def _combine(F: Field, coeffs, mats) -> np.ndarray:
    """``sum_i coeffs[i] * mats[i]``."""
    coeffs = F.array(coeffs)
    mats = np.asarray(mats)
    if F.p:
        return np.tensordot(coeffs, mats, axes=(0, 0)) % F.p
    out = F.zeros(mats.shape[1:])
    for c, m in zip(coeffs, mats):
        if c != 0:
            out = out + c * m
    return out


combine = _combine


class FinModule:
    """Left module: one ``dim x dim`` matrix per algebra basis element."""

    def __init__(self, algebra: FinAlgebra, action, *, name: str = "", validate: bool = True):
        self.algebra = algebra
        F = algebra.field
        action = F.array(action)
        if action.ndim == 1 and action.size == 0:
            action = F.zeros((algebra.dim, 0, 0))
        self.action = action
        if action.shape[0] != algebra.dim or action.ndim != 3 or action.shape[1] != action.shape[2]:
            raise ValueError(f"action must have shape ({algebra.dim}, d, d), got {action.shape}")
        self.name = name
        if validate:
            problems = self.check()
            if problems:
                raise ValueError(f"module {name or '?'} fails axioms: {problems[:3]}")

    def __repr__(self):
        return f"FinModule({self.name or '?'}, dim={self.dim}, over {self.algebra.name})"

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    def act(self, a) -> np.ndarray:
        return _combine(self.field, a, self.action)

    def check(self) -> list[str]:
        F = self.field
        A = self.algebra
        out = []
        if not F.equal(self.act(A.unit), F.eye(self.dim)):
            out.append("unit does not act as identity")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = F.mul(self.action[i], self.action[j])
                rhs = self.act(A.mult[i, j])
                if not F.equal(lhs, rhs):
                    out.append(f"action(e{i}) action(e{j}) != action(e{i} e{j})")
        return out

    def same_as(self, other: "FinModule") -> bool:
        return other.algebra is self.algebra and self.field.equal(self.action, other.action)

    # -- constructors -------------------------------------------------
    @classmethod
    def regular(cls, algebra: FinAlgebra, name: str = "") -> "FinModule":
        return cls(algebra, algebra.left, name=name or algebra.name, validate=False)

    @classmethod
    def zero(cls, algebra: FinAlgebra) -> "FinModule":
        return cls(algebra, algebra.field.zeros((algebra.dim, 0, 0)), name="0", validate=False)

    @classmethod
    def free(cls, algebra: FinAlgebra, rank: int) -> "FinModule":
        return direct_sum(*[cls.regular(algebra)] * rank) if rank else cls.zero(algebra)

    def dual(self, opposite: FinAlgebra | None = None) -> "FinModule":
        """k-linear dual, a module over the opposite algebra."""
        op = opposite or self.algebra.opposite()
        return FinModule(op, np.transpose(self.action, (0, 2, 1)), name=f"D({self.name})", validate=False)


def direct_sum(*modules: FinModule) -> FinModule:
    if not modules:
        raise ValueError("direct_sum needs at least one module")
    A = modules[0].algebra
    F = A.field
    action = np.stack([F.direct_sum(*[m.action[i] for m in modules]) for i in range(A.dim)]) \
        if sum(m.dim for m in modules) else F.zeros((A.dim, 0, 0))
    return FinModule(A, action, name="+".join(m.name or "?" for m in modules), validate=False)


def submodule(M: FinModule, cols) -> FinModule:
    """Module structure on the span of ``cols`` (assumed invariant and independent)."""
    F = M.field
    cols = F.array(cols)
    k = cols.shape[1]
    if k == 0:
        return FinModule.zero(M.algebra)
    images = np.concatenate([F.mul(M.action[i], cols) for i in range(M.algebra.dim)], axis=1)
    coords = F.coords(cols, images)
    action = np.stack([coords[:, i * k:(i + 1) * k] for i in range(M.algebra.dim)])
    return FinModule(M.algebra, action, name=f"sub({M.name})", validate=False)


def quotient(M: FinModule, sub_cols):
    """Return ``(M/U, projection)`` for an invariant subspace ``U``."""
    F = M.field
    if M.dim == 0:
        return FinModule.zero(M.algebra), F.zeros((0, 0))
    sub_cols = F.array(sub_cols).reshape(M.dim, -1)
    sub = F.column_basis(sub_cols) if sub_cols.shape[1] else sub_cols
    comp = F.complement_columns(sub, M.dim)
    full = np.concatenate([sub, comp], axis=1)
    inv = F.inverse(full)
    proj = inv[sub.shape[1]:, :]
    k = comp.shape[1]
    if k == 0:
        return FinModule.zero(M.algebra), F.zeros((0, M.dim))
    action = np.stack([F.chain(proj, M.action[i], comp) for i in range(M.algebra.dim)])
    return FinModule(M.algebra, action, name=f"{M.name}/U", validate=False), proj
