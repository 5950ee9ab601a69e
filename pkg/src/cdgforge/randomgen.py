"""Seeded generators of valid random objects over ``k[x]/(x^n)``."""

from __future__ import annotations

import numpy as np

from .algebra import FinAlgebra, FinModule, combine, direct_sum, quotient
from .graded import GradedModule, graded_direct_sum
from .mixed import Duplex, MixedComplex
from .modules import hom_space


def cyclic_module(S: FinAlgebra, j: int) -> FinModule:
    """``S / (x^j)`` for a truncated polynomial algebra ``S``."""
    F = S.field
    n = S.dim
    if j >= n:
        return FinModule.regular(S, name=S.name)
    R = FinModule.regular(S)
    M, _ = quotient(R, F.eye(n)[:, j:])
    M.name = f"{S.name}/(x^{j})"
    return M


def x_power_on(M: FinModule, e: int) -> np.ndarray:
    S = M.algebra
    F = S.field
    if e == 0:
        return F.eye(M.dim)
    return M.act(S.power(S.basis_vector(1), e))


def random_automorphism(M: FinModule, rng: np.random.Generator, tries: int = 50) -> np.ndarray:
    F = M.field
    if M.dim == 0:
        return F.zeros((0, 0))
    H = hom_space(M, M)
    for _ in range(tries):
        T = combine(F, F.random(H.shape[0], rng), H)
        if F.is_invertible(T):
            return T
    return F.eye(M.dim)


def _w_exponent(S: FinAlgebra, w) -> int:
    """``e`` with ``w = x^e``; only monomial curvatures are generated."""
    F = S.field
    w = F.array(w)
    nz = np.nonzero(w)[0]
    if len(nz) != 1 or w[nz[0]] != F.one:
        raise ValueError("random generators need w = x^e")
    return int(nz[0])


def random_mixed_complex(S: FinAlgebra, w, rng: np.random.Generator, max_blocks: int = 3,
                         degree_range=(-2, 2)) -> MixedComplex:
    """Sum of two-term blocks ``V --x^a--> V``, ``s = x^(e-a)``, then conjugated degreewise."""
    F = S.field
    e = _w_exponent(S, w)
    nblocks = int(rng.integers(1, max_blocks + 1))
    pieces = {}  # degree -> list of modules
    d_parts, s_parts = [], []
    for _ in range(nblocks):
        m = int(rng.integers(degree_range[0] + 1, degree_range[1] + 1))
        V = cyclic_module(S, int(rng.integers(1, S.dim + 1)))
        a = int(rng.integers(0, e + 1))
        lo_i = len(pieces.setdefault(m - 1, []))
        pieces[m - 1].append(V)
        hi_i = len(pieces.setdefault(m, []))
        pieces[m].append(V)
        d_parts.append((m - 1, lo_i, hi_i, x_power_on(V, a)))
        s_parts.append((m, hi_i, lo_i, x_power_on(V, e - a)))
    comps = {k: direct_sum(*mods) for k, mods in pieces.items()}
    offs = {k: np.cumsum([0] + [v.dim for v in mods]) for k, mods in pieces.items()}
    d = {k: F.zeros((comps[k + 1].dim, comps[k].dim)) for k in comps if k + 1 in comps}
    s = {k: F.zeros((comps[k - 1].dim, comps[k].dim)) for k in comps if k - 1 in comps}
    for k, i, j, mat in d_parts:
        d[k][offs[k + 1][j]:offs[k + 1][j + 1], offs[k][i]:offs[k][i + 1]] = mat
    for k, i, j, mat in s_parts:
        s[k][offs[k - 1][j]:offs[k - 1][j + 1], offs[k][i]:offs[k][i + 1]] = mat
    # conjugate by random automorphisms of each component
    P = {k: random_automorphism(comps[k], rng) for k in comps}
    Pinv = {k: F.inverse(P[k]) for k in comps}
    d = {k: F.chain(P[k + 1], v, Pinv[k]) for k, v in d.items()}
    s = {k: F.chain(P[k - 1], v, Pinv[k]) for k, v in s.items()}
    return MixedComplex(S, w, comps, d, s, name="random")


def random_duplex(S: FinAlgebra, w, rng: np.random.Generator, max_blocks: int = 2) -> Duplex:
    """Sum of blocks ``(V; x^a, x^(e-a))`` conjugated by random automorphisms."""
    F = S.field
    e = _w_exponent(S, w)
    blocks = []
    for _ in range(int(rng.integers(1, max_blocks + 1))):
        V = cyclic_module(S, int(rng.integers(1, S.dim + 1)))
        a = int(rng.integers(0, e + 1))
        blocks.append((V, x_power_on(V, a), x_power_on(V, e - a)))
    M = direct_sum(*[b[0] for b in blocks])
    f = F.direct_sum(*[b[1] for b in blocks])
    g = F.direct_sum(*[b[2] for b in blocks])
    P = random_automorphism(M, rng)
    Q = random_automorphism(M, rng)
    f2 = F.chain(Q, f, F.inverse(P))
    g2 = F.chain(P, g, F.inverse(Q))
    return Duplex(S, w, M, M, f2, g2, name="random")


def random_graded_module(ring, modules: list, rng: np.random.Generator, max_pieces: int = 3,
                         degree_range=(-2, 2)) -> GradedModule:
    """Sum of modules from ``modules`` over a degree-0 ring placed in random degrees."""
    F = ring.field
    pieces = []
    for _ in range(int(rng.integers(1, max_pieces + 1))):
        M = modules[int(rng.integers(0, len(modules)))]
        deg = int(rng.integers(degree_range[0], degree_range[1] + 1))
        pieces.append(GradedModule(ring, [deg] * M.dim, M.action, validate=False))
    Z = graded_direct_sum(*pieces)
    # conjugate within each degree
    T = F.eye(Z.dim)
    for d in Z.support():
        ii = Z.indices(d)
        sub = FinModule(ring.algebra, Z.action[:, ii][:, :, ii], validate=False)
        T[np.ix_(ii, ii)] = random_automorphism(sub, rng)
    Tinv = F.inverse(T)
    action = np.stack([F.chain(T, Z.action[i], Tinv) for i in range(ring.dim)])
    return GradedModule(ring, Z.degrees, action, name="random")
