"""Exact dense linear algebra over a prime field F_p or over Q.

Matrices are plain numpy arrays: ``int64`` reduced into ``[0, p)`` for
F_p, ``object`` arrays of :class:`fractions.Fraction` for Q.  Every
routine takes the :class:`Field` explicitly; nothing is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

import numpy as np

from . import _kernels

MAX_PRIME = 1 << 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """F_p for a prime ``p`` (``characteristic=p``) or Q (``characteristic=0``)."""

    def __init__(self, characteristic: int = 3):
        characteristic = int(characteristic)
        if characteristic != 0:
            if not _is_prime(characteristic):
                raise ValueError(f"characteristic must be 0 or a prime, got {characteristic}")
            if characteristic >= MAX_PRIME:
                raise ValueError(f"prime too large for int64 kernels: {characteristic}")
        self.p = characteristic

    def __repr__(self):
        return "Field(Q)" if self.p == 0 else f"Field(F_{self.p})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def dtype(self):
        return np.int64 if self.p else object

    # -- construction -------------------------------------------------
    def scalar(self, x):
        if self.p:
            if isinstance(x, Fraction):
                return int(x.numerator) * pow(int(x.denominator), self.p - 2, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def array(self, data) -> np.ndarray:
        if self.p:
            a = np.asarray(data)
            if a.dtype == object:
                a = np.vectorize(self.scalar, otypes=[np.int64])(a) if a.size else a.astype(np.int64)
            return np.asarray(a, dtype=np.int64) % self.p
        a = np.asarray(data, dtype=object)
        out = np.empty(a.shape, dtype=object)
        flat = out.reshape(-1)
        for i, v in enumerate(a.reshape(-1)):
            flat[i] = Fraction(v)
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.p:
            return np.zeros(shape, dtype=np.int64)
        return self.array(np.zeros(shape, dtype=np.int64))

    def eye(self, n: int) -> np.ndarray:
        if self.p:
            return np.eye(n, dtype=np.int64)
        return self.array(np.eye(n, dtype=np.int64))

    @cached_property
    def one(self):
        return self.scalar(1)

    def neg_one(self):
        return self.scalar(-1)

    def sign(self, e: int):
        """(-1)^e as a field element."""
        return self.scalar(-1 if e % 2 else 1)

    def reduce(self, a) -> np.ndarray:
        if self.p:
            return np.asarray(a, dtype=np.int64) % self.p
        return a

    def inv_scalar(self, x):
        if self.p:
            x = int(x) % self.p
            if x == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(x, self.p - 2, self.p)
        return 1 / Fraction(x)

    # -- arithmetic ---------------------------------------------------
    def mul(self, a, b) -> np.ndarray:
        if self.p:
            return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % self.p
        a = np.asarray(a, dtype=object)
        b = np.asarray(b, dtype=object)
        if a.shape[-1] == 0:
            shape = a.shape[:-1] + b.shape[1:]
            return self.zeros(shape)
        return a @ b

    def chain(self, *mats) -> np.ndarray:
        out = mats[0]
        for m in mats[1:]:
            out = self.mul(out, m)
        return out

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def scale(self, c, a):
        return self.reduce(self.scalar(c) * a)

    def is_zero(self, a) -> bool:
        a = np.asarray(a)
        if a.size == 0:
            return True
        if self.p:
            return not np.any(a % self.p)
        return all(v == 0 for v in a.reshape(-1))

    def equal(self, a, b) -> bool:
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape != b.shape:
            return False
        return self.is_zero(self.sub(a, b))

    def random(self, shape, rng: np.random.Generator) -> np.ndarray:
        if self.p:
            return rng.integers(0, self.p, size=shape, dtype=np.int64)
        return self.array(rng.integers(-3, 4, size=shape))

    # -- elimination --------------------------------------------------
    def rref(self, a):
        """Return ``(R, pivots)`` with ``R`` the reduced row echelon form."""
        a = np.asarray(a)
        if a.ndim != 2:
            raise ValueError("rref expects a 2-d array")
        if self.p:
            if a.shape[0] == 0 or a.shape[1] == 0:
                return np.zeros(a.shape, dtype=np.int64), np.zeros(0, dtype=np.int64)
            return _kernels.rref_modp(a, self.p)
        return _rref_rational(self.array(a))

    def rank(self, a) -> int:
        a = np.asarray(a)
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def nullspace(self, a) -> np.ndarray:
        """Columns spanning ``{x : a x = 0}``; shape ``(ncols, nullity)``."""
        a = np.asarray(a)
        n = a.shape[1]
        if a.shape[0] == 0:
            return self.eye(n)
        r, piv = self.rref(a)
        piv = [int(c) for c in piv]
        free = [c for c in range(n) if c not in set(piv)]
        basis = self.zeros((n, len(free)))
        for j, fc in enumerate(free):
            basis[fc, j] = self.one
            for i, pc in enumerate(piv):
                basis[pc, j] = self.reduce(-r[i, fc])
        return basis

    def left_nullspace(self, a) -> np.ndarray:
        """Rows spanning ``{y : y a = 0}``; shape ``(nullity, nrows)``."""
        return self.nullspace(np.asarray(a).T).T

    def solve(self, a, b):
        """One solution ``x`` of ``a x = b`` (``b`` vector or matrix), else ``None``."""
        a = np.asarray(a)
        b = np.asarray(b)
        vec = b.ndim == 1
        if vec:
            b = b.reshape(-1, 1)
        m, n = a.shape
        k = b.shape[1]
        if m == 0:
            return self.zeros((n,) if vec else (n, k))
        aug = np.concatenate([self.array(a), self.array(b)], axis=1)
        r, piv = self.rref(aug)
        piv = [int(c) for c in piv]
        if any(c >= n for c in piv):
            return None
        x = self.zeros((n, k))
        for i, c in enumerate(piv):
            x[c] = r[i, n:]
        return x[:, 0] if vec else x

    def inverse(self, a):
        a = np.asarray(a)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("inverse of non-square matrix")
        x = self.solve(a, self.eye(n))
        if x is None:
            raise np.linalg.LinAlgError("singular matrix")
        return x

    def is_invertible(self, a) -> bool:
        a = np.asarray(a)
        return a.shape[0] == a.shape[1] and self.rank(a) == a.shape[0]

    def column_basis(self, a) -> np.ndarray:
        """Independent columns of ``a`` spanning its column space."""
        a = np.asarray(a)
        if a.size == 0:
            return self.zeros((a.shape[0], 0))
        _, piv = self.rref(a)
        return a[:, [int(c) for c in piv]]

    def complement_columns(self, sub, ambient_dim: int) -> np.ndarray:
        """Standard basis vectors completing the columns of ``sub`` to a basis."""
        sub = np.asarray(sub)
        if sub.size == 0:
            return self.eye(ambient_dim)
        aug = np.concatenate([self.array(sub), self.eye(ambient_dim)], axis=1)
        _, piv = self.rref(aug)
        extra = [int(c) - sub.shape[1] for c in piv if c >= sub.shape[1]]
        return self.eye(ambient_dim)[:, extra]

    def coords(self, basis, vecs):
        """Coordinates of the columns of ``vecs`` in the column ``basis``.

        Raises ``ValueError`` when some column is outside the span.
        """
        x = self.solve(basis, vecs)
        if x is None:
            raise ValueError("vector not in span of basis")
        return x

    def in_span(self, basis, vecs) -> bool:
        basis = np.asarray(basis)
        vecs = np.asarray(vecs)
        if vecs.ndim == 1:
            vecs = vecs.reshape(-1, 1)
        if basis.size == 0:
            return self.is_zero(vecs)
        return self.solve(basis, vecs) is not None

    def block(self, rows) -> np.ndarray:
        """numpy.block that tolerates zero-sized blocks."""
        return np.block([[np.asarray(b) for b in row] for row in rows])

    def direct_sum(self, *mats) -> np.ndarray:
        r = sum(m.shape[0] for m in mats)
        c = sum(m.shape[1] for m in mats)
        out = self.zeros((r, c))
        i = j = 0
        for m in mats:
            out[i:i + m.shape[0], j:j + m.shape[1]] = m
            i += m.shape[0]
            j += m.shape[1]
        return out


def _rref_rational(a: np.ndarray):
    a = a.copy()
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        i = next((i for i in range(r, m) if a[i, c] != 0), None)
        if i is None:
            continue
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] / a[r, c]
        for i2 in range(m):
            if i2 != r and a[i2, c] != 0:
                a[i2] = a[i2] - a[i2, c] * a[r]
        pivots.append(c)
        r += 1
    return a, np.asarray(pivots, dtype=np.int64)


F3 = Field(3)
