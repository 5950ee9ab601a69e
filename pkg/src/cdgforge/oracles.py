"""Brute-force oracles over small finite fields.

Everything here enumerates vectors or matrices outright and shares no code
with the linear-algebra layer beyond the modular arithmetic of ``Field``.
Sizes are capped so a careless call fails fast instead of hanging.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .algebra import FinModule

LIMIT = 200_000


def _all_vectors(p: int, n: int) -> np.ndarray:
    if p ** n > LIMIT:
        raise ValueError(f"oracle enumeration too large: {p}^{n}")
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)


def _log(p: int, count: int) -> int:
    d = round(math.log(count, p))
    if p ** d != count:
        raise ArithmeticError(f"{count} is not a power of {p}")
    return d


def _all_matrices(p: int, rows: int, cols: int):
    for flat in _all_vectors(p, rows * cols):
        yield flat.reshape(rows, cols)


def kernel_vectors(p: int, A) -> np.ndarray:
    """Every ``v`` with ``A v = 0``."""
    A = np.asarray(A, dtype=np.int64) % p
    V = _all_vectors(p, A.shape[1])
    return V[np.all((V @ A.T) % p == 0, axis=1)]


def rank(p: int, A) -> int:
    A = np.asarray(A, dtype=np.int64)
    return A.shape[1] - _log(p, len(kernel_vectors(p, A)))


def _is_linear_on(p, M: FinModule, N: FinModule, f, vecs) -> bool:
    A = M.algebra
    for g in range(A.dim):
        lhs = (f @ ((M.action[g] @ vecs.T) % p)) % p
        rhs = (N.action[g] @ ((f @ vecs.T) % p)) % p
        if not np.array_equal(lhs, rhs):
            return False
    return True


def hom_dim(M: FinModule, N: FinModule) -> int:
    """``dim Hom_A(M, N)`` by testing every linear map."""
    p = M.field.p
    basis = np.eye(M.dim, dtype=np.int64)
    count = sum(1 for f in _all_matrices(p, N.dim, M.dim) if _is_linear_on(p, M, N, f, basis))
    return _log(p, count)


def _restricted_hom_dim(P: FinModule, K: np.ndarray, N: FinModule) -> int:
    """``dim Hom_A(K, N)`` for the submodule of ``P`` whose vectors are the rows of ``K``."""
    p = P.field.p
    seen = set()
    for f in _all_matrices(p, N.dim, P.dim):
        if _is_linear_on(p, P, N, f, K):
            seen.add(((f @ K.T) % p).tobytes())
    return _log(p, len(seen))


def ext1_dim(M: FinModule, N: FinModule, P: FinModule, pi) -> int:
    """``dim Ext^1(M, N)`` from ``0 -> Hom(M,N) -> Hom(P,N) -> Hom(OmegaM,N) -> Ext^1 -> 0``."""
    p = M.field.p
    K = kernel_vectors(p, pi)
    return _restricted_hom_dim(P, K, N) - hom_dim(P, N) + hom_dim(M, N)


def stable_hom_dim(M: FinModule, N: FinModule, P: FinModule, pi) -> int:
    """``dim Hom(M, N)`` minus the maps factoring through the epi ``pi: P -> N`` from a projective."""
    p = M.field.p
    pi = np.asarray(pi, dtype=np.int64) % p
    basis = np.eye(M.dim, dtype=np.int64)
    homs = sum(1 for f in _all_matrices(p, N.dim, M.dim) if _is_linear_on(p, M, N, f, basis))
    composites = {((pi @ a) % p).tobytes() for a in _all_matrices(p, P.dim, M.dim)
                  if _is_linear_on(p, M, P, a, basis)}
    return _log(p, homs) - _log(p, len(composites))


def syzygy_isomorphic(M: FinModule, P: FinModule, pi) -> bool:
    """Whether ``ker(pi) ~= M``: some module map ``ker(pi) -> M`` is injective on every vector."""
    p = M.field.p
    K = kernel_vectors(p, pi)
    if len(K) != p ** M.dim:
        return False
    nonzero = K[np.any(K != 0, axis=1)]
    for f in _all_matrices(p, M.dim, P.dim):
        if _is_linear_on(p, P, M, f, K) and np.all(np.any((f @ nonzero.T) % p != 0, axis=0)):
            return True
    return False


def is_free_over_local(M: FinModule, radical_gen: int) -> bool:
    """Over ``k[x]/(x^n)``: free iff ``x`` has kernel of dimension ``dim M / n``."""
    n = M.algebra.dim
    if M.dim % n:
        return False
    return M.dim - rank(M.field.p, M.action[radical_gen]) == M.dim // n


def cohomology_dims(p: int, comps: dict, d: dict) -> dict:
    """``dim H^k`` of ``... -> C^k --d[k]--> C^(k+1) -> ...`` by kernel counting."""
    out = {}
    for k, n in comps.items():
        dk = d.get(k)
        ker = n if dk is None or dk.size == 0 else n - rank(p, dk)
        prev = d.get(k - 1)
        im = 0 if prev is None or prev.size == 0 else rank(p, prev)
        out[k] = ker - im
    return out
