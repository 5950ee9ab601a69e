"""Row-reduction kernels over F_p.

Two interchangeable implementations of the same routine are provided: a
numba ``@njit`` kernel and a pure-numpy path.  The numba kernel is used
when numba imports cleanly and ``CDGFORGE_DISABLE_NUMBA`` is unset or
falsy; set it to ``1`` to force the numpy path (useful for debugging and
for the benchmark in ``benchmarks/bench_rref.py``).
"""

from __future__ import annotations

import os

import numpy as np

DISABLE_ENV = "CDGFORGE_DISABLE_NUMBA"

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def numba_enabled() -> bool:
    if not HAVE_NUMBA:
        return False
    return os.environ.get(DISABLE_ENV, "").strip().lower() not in ("1", "true", "yes", "on")


def rref_modp_numpy(a: np.ndarray, p: int):
    """Reduced row echelon form of ``a`` mod ``p`` (numpy path).

    Returns ``(r, pivots)`` where ``r`` is a fresh array and ``pivots`` the
    pivot column of each nonzero row.
    """
    a = np.array(a, dtype=np.int64, copy=True) % p
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[rows] = (a[rows] - np.outer(col[rows], a[r])) % p
        pivots.append(c)
        r += 1
    return a, np.asarray(pivots, dtype=np.int64)


if HAVE_NUMBA:

    @njit(cache=True)
    def _inv_modp(x, p):
        # extended Euclid; x is nonzero mod p
        t, new_t = 0, 1
        r, new_r = p, x % p
        while new_r != 0:
            q = r // new_r
            t, new_t = new_t, t - q * new_t
            r, new_r = new_r, r - q * new_r
        if t < 0:
            t += p
        return t

    @njit(cache=True)
    def _rref_modp_jit(a, p):
        m, n = a.shape
        pivots = np.empty(min(m, n), dtype=np.int64)
        r = 0
        for c in range(n):
            if r == m:
                break
            i = r
            while i < m and a[i, c] == 0:
                i += 1
            if i == m:
                continue
            if i != r:
                for j in range(n):
                    tmp = a[r, j]
                    a[r, j] = a[i, j]
                    a[i, j] = tmp
            inv = _inv_modp(a[r, c], p)
            for j in range(c, n):
                a[r, j] = (a[r, j] * inv) % p
            for i2 in range(m):
                if i2 == r:
                    continue
                f = a[i2, c]
                if f == 0:
                    continue
                for j in range(c, n):
                    a[i2, j] = (a[i2, j] - f * a[r, j]) % p
            pivots[r] = c
            r += 1
        return pivots[:r]


def rref_modp_numba(a: np.ndarray, p: int):
    """Same contract as :func:`rref_modp_numpy`, compiled with numba."""
    a = np.ascontiguousarray(np.array(a, dtype=np.int64, copy=True) % p)
    pivots = _rref_modp_jit(a, np.int64(p))
    return a, pivots


def rref_modp(a: np.ndarray, p: int):
    if numba_enabled():
        return rref_modp_numba(a, p)
    return rref_modp_numpy(a, p)
