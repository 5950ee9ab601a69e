"""Hom spaces, covers, Ext^1 and stable homs for modules over a FinAlgebra."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import FinAlgebra, FinModule, combine, direct_sum, quotient, submodule
from .field import Field

ISO_EXHAUSTIVE_LIMIT = 10_000
ISO_RANDOM_SAMPLES = 200


def solve_intertwiners(F: Field, gens_x, gens_y, signs, allowed) -> np.ndarray:
    """Basis of ``{T : T gx = sign * gy T for each generator, T supported on allowed}``.

    ``gens_x[a]`` is ``nx x nx``, ``gens_y[a]`` is ``ny x ny`` and
    ``allowed`` an ``ny x nx`` boolean mask.  Returns an array of shape
    ``(dim, ny, nx)``.
    """
    allowed = np.asarray(allowed, dtype=bool)
    ny, nx = allowed.shape
    ic, lc = np.nonzero(allowed)
    nunk = ic.size
    if nunk == 0:
        return F.zeros((0, ny, nx))
    blocks = []
    for gx, gy, sg in zip(gens_x, gens_y, signs):
        gx = np.asarray(gx)
        gy = np.asarray(gy)
        nzx = (gx != 0).astype(np.int64)
        nzy = (gy != 0).astype(np.int64)
        rowmask = ((allowed.astype(np.int64) @ nzx) + (nzy @ allowed.astype(np.int64))) > 0
        ir, jr = np.nonzero(rowmask)
        if ir.size == 0:
            continue
        # (T gx)[i, j] = sum_l T[i, l] gx[l, j];  (gy T)[i, j] = sum_l gy[i, l] T[l, j]
        e1 = np.where(ir[:, None] == ic[None, :], gx[lc[None, :], jr[:, None]], 0)
        e2 = np.where(jr[:, None] == lc[None, :], gy[ir[:, None], ic[None, :]], 0)
        if F.p:
            blocks.append((e1 - int(sg) * e2) % F.p)
        else:
            blocks.append(F.array(e1) - sg * F.array(e2))
    if not blocks:
        null = F.eye(nunk)
    else:
        null = F.nullspace(np.concatenate(blocks, axis=0))
    out = F.zeros((null.shape[1], ny, nx))
    for t in range(null.shape[1]):
        out[t, ic, lc] = null[:, t]
    return out


def _gens(M: FinModule):
    return [M.action[g] for g in M.algebra.generators]


def _check_same_algebra(M: FinModule, N: FinModule):
    if M.algebra is not N.algebra:
        raise ValueError(f"algebra mismatch: {M.algebra.name!r} vs {N.algebra.name!r}")


def hom_space(M: FinModule, N: FinModule) -> np.ndarray:
    """Basis of Hom_A(M, N) as an array of ``dim(N) x dim(M)`` matrices."""
    _check_same_algebra(M, N)
    F = M.field
    ones = [F.one] * len(M.algebra.generators)
    return solve_intertwiners(F, _gens(M), _gens(N), ones, np.ones((N.dim, M.dim), dtype=bool))


def flatten(mats) -> np.ndarray:
    """Stack matrices as columns of a ``(rows*cols) x k`` matrix."""
    mats = np.asarray(mats)
    if mats.shape[0] == 0:
        return mats.reshape(0, -1).T
    return mats.reshape(mats.shape[0], -1).T


def is_module_map(M: FinModule, N: FinModule, T) -> bool:
    F = M.field
    return all(F.equal(F.mul(T, M.action[i]), F.mul(N.action[i], T)) for i in range(M.algebra.dim))


# -- projective covers and injective envelopes ---------------------------

def radical_submodule(M: FinModule) -> np.ndarray:
    """Columns spanning rad(A) M."""
    F = M.field
    J = M.algebra.radical_basis
    if J.shape[1] == 0 or M.dim == 0:
        return F.zeros((M.dim, 0))
    images = np.concatenate([M.act(J[:, t]) for t in range(J.shape[1])], axis=1)
    return F.column_basis(images)


def top_dimension(M: FinModule) -> int:
    return M.dim - radical_submodule(M).shape[1]


def _indecomposable_projective(A: FinAlgebra, e) -> tuple[FinModule, np.ndarray]:
    """The left ideal ``A e`` as a module, and its basis (columns in A)."""
    F = A.field
    cols = F.column_basis(F.mul(combine(F, e, A.right), F.eye(A.dim)))
    return submodule(FinModule.regular(A), cols), cols


@dataclass
class Cover:
    """Projective cover ``P -> M`` assembled from summands ``A e``."""

    module: FinModule
    projective: FinModule
    map: np.ndarray
    summands: list = dc_field(default_factory=list)

    @property
    def kernel_cols(self) -> np.ndarray:
        return self.module.field.nullspace(self.map) if self.projective.dim else self.module.field.zeros((0, 0))

    def syzygy(self) -> tuple[FinModule, np.ndarray]:
        """Omega M together with its inclusion into P."""
        F = self.module.field
        if self.projective.dim == 0:
            return FinModule.zero(self.module.algebra), F.zeros((0, 0))
        K = F.nullspace(self.map)
        return submodule(self.projective, K), K


def projective_cover(M: FinModule) -> Cover:
    """Minimal projective cover built from a lifted basis of M / rad M."""
    A = M.algebra
    F = M.field
    chosen = []
    span = radical_submodule(M)
    for idx, e in enumerate(A.primitive_idempotents):
        eM = F.column_basis(M.act(e))
        for t in range(eM.shape[1]):
            v = eM[:, t]
            if F.in_span(span, v):
                continue
            chosen.append((idx, v))
            orbit = np.stack([M.act(A.basis_vector(i)) @ v for i in range(A.dim)], axis=1)
            orbit = F.reduce(orbit)
            span = F.column_basis(np.concatenate([span, orbit], axis=1)) if span.size else F.column_basis(orbit)
    if not chosen:
        return Cover(M, FinModule.zero(A), F.zeros((M.dim, 0)), [])
    pieces = []
    maps = []
    for idx, v in chosen:
        P, cols = _indecomposable_projective(A, A.primitive_idempotents[idx])
        pieces.append(P)
        maps.append(np.stack([F.mul(M.act(cols[:, j]), v) for j in range(cols.shape[1])], axis=1))
    P = direct_sum(*pieces)
    return Cover(M, P, np.concatenate(maps, axis=1), [idx for idx, _ in chosen])


def injective_envelope(M: FinModule) -> tuple[FinModule, np.ndarray]:
    """``(I, iota)`` with ``iota: M -> I`` an injective envelope, via duality."""
    A = M.algebra
    op = A.op
    Dm = FinModule(op, np.transpose(M.action, (0, 2, 1)), validate=False)
    cov = projective_cover(Dm)
    I = FinModule(A, np.transpose(cov.projective.action, (0, 2, 1)), name=f"I({M.name})", validate=False)
    return I, cov.map.T.copy()


def classify_module(M: FinModule) -> dict:
    """Projectivity via the cover kernel; injectivity via the dual over A^op."""
    cov = projective_cover(M)
    projective = cov.projective.dim == M.dim
    I, _ = injective_envelope(M)
    injective = I.dim == M.dim
    return {"projective": projective, "injective": injective}


def is_projective(M: FinModule) -> bool:
    return projective_cover(M).projective.dim == M.dim


def is_injective(M: FinModule) -> bool:
    return injective_envelope(M)[0].dim == M.dim


# -- Ext^1 and stable homs ----------------------------------------------

@dataclass
class Ext1:
    dim: int
    cocycles: np.ndarray  # maps Omega M -> N spanning a complement of the coboundaries
    syzygy: FinModule
    inclusion: np.ndarray


def ext1(M: FinModule, N: FinModule) -> Ext1:
    """Ext^1_A(M, N) = coker(Hom(P, N) -> Hom(Omega M, N)) for a cover P -> M."""
    _check_same_algebra(M, N)
    F = M.field
    cov = projective_cover(M)
    omega, inc = cov.syzygy()
    H = hom_space(omega, N)
    if H.shape[0] == 0:
        return Ext1(0, H, omega, inc)
    HP = hom_space(cov.projective, N)
    restricted = np.stack([F.mul(phi, inc) for phi in HP]) if HP.shape[0] else F.zeros((0, N.dim, omega.dim))
    img = F.column_basis(flatten(restricted)) if restricted.shape[0] else F.zeros((N.dim * omega.dim, 0))
    ambient = flatten(H)
    coords_img = F.coords(ambient, img) if img.shape[1] else F.zeros((H.shape[0], 0))
    comp = F.complement_columns(coords_img, H.shape[0])
    reps = np.stack([combine(F, comp[:, t], H) for t in range(comp.shape[1])]) if comp.shape[1] \
        else F.zeros((0, N.dim, omega.dim))
    return Ext1(H.shape[0] - img.shape[1], reps, omega, inc)


def factoring_maps(M: FinModule, N: FinModule, mode: str = "projectives") -> np.ndarray:
    """Columns spanning the maps M -> N that factor through the chosen class."""
    F = M.field
    if mode == "projectives":
        cov = projective_cover(N)
        H = hom_space(M, cov.projective)
        imgs = [F.mul(cov.map, h) for h in H]
    elif mode == "injectives":
        I, iota = injective_envelope(M)
        H = hom_space(I, N)
        imgs = [F.mul(h, iota) for h in H]
    else:
        raise ValueError(f"mode must be 'projectives' or 'injectives', got {mode!r}")
    if not imgs:
        return F.zeros((N.dim * M.dim, 0))
    return F.column_basis(flatten(np.stack(imgs)))


@dataclass
class StableHom:
    dim: int
    hom_dim: int
    basis: np.ndarray


def stable_hom(M: FinModule, N: FinModule, mode: str = "projectives") -> StableHom:
    _check_same_algebra(M, N)
    F = M.field
    H = hom_space(M, N)
    fac = factoring_maps(M, N, mode)
    if H.shape[0] == 0:
        return StableHom(0, 0, H)
    coords = F.coords(flatten(H), fac) if fac.shape[1] else F.zeros((H.shape[0], 0))
    comp = F.complement_columns(coords, H.shape[0])
    reps = np.stack([combine(F, comp[:, t], H) for t in range(comp.shape[1])]) if comp.shape[1] \
        else F.zeros((0, N.dim, M.dim))
    return StableHom(H.shape[0] - fac.shape[1], H.shape[0], reps)


def factors_through_cover(f, cover_map, source: FinModule, cover_source: FinModule) -> bool:
    """Whether ``f: X -> Y`` lifts along ``cover_map: I -> Y``."""
    F = source.field
    H = hom_space(source, cover_source)
    if H.shape[0] == 0:
        return F.is_zero(f)
    imgs = flatten(np.stack([F.mul(cover_map, h) for h in H]))
    return F.in_span(imgs, np.asarray(f).reshape(-1))


# -- isomorphism search ---------------------------------------------------

def find_invertible(F: Field, basis, rng: np.random.Generator | None = None,
                    exhaustive_limit: int = ISO_EXHAUSTIVE_LIMIT, samples: int = ISO_RANDOM_SAMPLES):
    """Search the span of ``basis`` for an invertible matrix.

    Returns ``(verdict, matrix)`` with verdict ``True`` (found), ``False``
    (exhaustively ruled out) or ``None`` (undecided after sampling).
    """
    basis = np.asarray(basis)
    k = basis.shape[0]
    if k == 0:
        return False, None
    n, m = basis.shape[1:]
    if n != m:
        return False, None
    if n == 0:
        return True, F.zeros((0, 0))
    for t in range(k):
        if F.is_invertible(basis[t]):
            return True, basis[t]
    if F.p and F.p ** k <= exhaustive_limit:
        for coeffs in itertools.product(range(F.p), repeat=k):
            T = combine(F, list(coeffs), basis)
            if F.is_invertible(T):
                return True, T
        return False, None
    rng = rng or np.random.default_rng(0)
    for _ in range(samples):
        T = combine(F, F.random(k, rng), basis)
        if F.is_invertible(T):
            return True, T
    return None, None


def find_isomorphism(M: FinModule, N: FinModule, rng=None):
    """``(verdict, iso)``; see :func:`find_invertible` for the verdict values."""
    _check_same_algebra(M, N)
    if M.dim != N.dim:
        return False, None
    if M.dim == 0:
        return True, M.field.zeros((0, 0))
    return find_invertible(M.field, hom_space(M, N), rng)


# -- resolutions -----------------------------------------------------------

@dataclass
class Resolution:
    module: FinModule
    covers: list
    syzygies: list
    verdict: str  # "pd=n", "pd=inf" or "unknown"
    pd: int | None
    repeat: tuple | None = None

    @property
    def is_finite(self) -> bool:
        return self.pd is not None


def projective_resolution(M: FinModule, max_steps: int = 4, rng=None) -> Resolution:
    """Minimal resolution prefix; pd verdict by projectivity or syzygy repetition."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    syz = [M]
    covers = []
    for i in range(max_steps + 1):
        cur = syz[-1]
        if is_projective(cur):
            return Resolution(M, covers, syz, f"pd={i}", i)
        for j in range(i):
            verdict, _ = find_isomorphism(syz[j], cur, rng)
            if verdict:
                return Resolution(M, covers, syz, "pd=inf", None, (j, i))
        if i == max_steps:
            break
        cov = projective_cover(cur)
        covers.append(cov)
        syz.append(cov.syzygy()[0])
    return Resolution(M, covers, syz, "unknown", None)


def cosyzygy_sequence(M: FinModule, steps: int):
    """Injective coresolution prefix: list of ``(I, iota, next cosyzygy, proj)``."""
    out = []
    cur = M
    for _ in range(steps):
        I, iota = injective_envelope(cur)
        Q, proj = quotient(I, iota)
        out.append((I, iota, Q, proj))
        cur = Q
    return out
