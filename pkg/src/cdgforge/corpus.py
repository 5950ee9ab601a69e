"""The standard corpus: F_p, S2 = F_p[x]/(x^2), S4 = F_p[x]/(x^4), w = x^2 and
the objects built from them."""

from __future__ import annotations

from functools import cached_property, lru_cache

import numpy as np

from .algebra import FinAlgebra, FinModule, quotient
from .field import Field
from .graded import CdgModule, GradedModule, cone_id, dg_ring
from .mixed import Duplex, MixedComplex, curved_ring, koszul_ring
from .model import periodic_complex, stalk


class Corpus:
    def __init__(self, p: int = 3):
        self.F = Field(p)

    # -- algebras -------------------------------------------------------
    @cached_property
    def F1(self) -> FinAlgebra:
        """The base field as a one-dimensional algebra."""
        return FinAlgebra.truncated_polynomial(self.F, 1, "F")

    @cached_property
    def S2(self) -> FinAlgebra:
        return FinAlgebra.truncated_polynomial(self.F, 2, "S2")

    @cached_property
    def S4(self) -> FinAlgebra:
        return FinAlgebra.truncated_polynomial(self.F, 4, "S4")

    @cached_property
    def w(self) -> np.ndarray:
        return self.F.array([0, 0, 1, 0])

    @cached_property
    def K(self):
        return koszul_ring(self.S4, self.w)

    @cached_property
    def Sw(self):
        return curved_ring(self.S4, self.w)

    @cached_property
    def dgS2(self):
        return dg_ring(self.S2)

    # -- modules --------------------------------------------------------
    @cached_property
    def S2reg(self) -> FinModule:
        return FinModule.regular(self.S2, "S2")

    @cached_property
    def k(self) -> FinModule:
        """``S2 / (x)``."""
        M, _ = quotient(self.S2reg, self.F.array([[0], [1]]))
        M.name = "k"
        return M

    @cached_property
    def k_cover(self) -> np.ndarray:
        """The projection ``S2 -> k``."""
        return self.F.array([[1, 0]])

    @cached_property
    def S4reg(self) -> FinModule:
        return FinModule.regular(self.S4, "S4")

    def x_power(self, e: int) -> np.ndarray:
        return self.S4.left_matrix(self.S4.power(self.S4.basis_vector(1), e)) if e else self.F.eye(4)

    # -- mixed complexes and duplexes ------------------------------------
    @cached_property
    def XK(self) -> MixedComplex:
        """``K`` over itself: ``X^-1 = S4 s``, ``X^0 = S4``, ``d = w``, ``s = id``."""
        R = self.S4reg
        return MixedComplex(self.S4, self.w, {-1: R, 0: R}, {-1: self.x_power(2)}, {0: self.F.eye(4)},
                            name="X_K")

    @cached_property
    def XK_cdg(self) -> CdgModule:
        return CdgModule.regular(self.K)

    @cached_property
    def D1(self) -> Duplex:
        return Duplex(self.S4, self.w, self.S4reg, self.S4reg, self.x_power(1), self.x_power(1), name="D1")

    @cached_property
    def D_bad(self) -> Duplex:
        return Duplex(self.S4, self.w, self.S4reg, self.S4reg, self.x_power(1), self.x_power(3),
                      name="D_bad", validate=False)

    @cached_property
    def induced_stalk(self) -> MixedComplex:
        from .mixed import induce_koszul
        V = MixedComplex(self.S4, self.w, {0: self.S4reg}, validate=False, name="S4[0]")
        X = induce_koszul(V, 0)
        X.name = "K(x)S4"
        return X

    def mixed_list(self) -> list:
        return [self.XK, self.induced_stalk, MixedComplex.zero(self.S4, self.w)]

    # -- complexes over S2 ----------------------------------------------------
    @cached_property
    def periodic_S2(self):
        """The ``x``-periodic complex of free S2-modules on ``[-3, 3]``."""
        return periodic_complex(self.S2reg, self.S2.left[1], -3, 3, name="P_x")

    @cached_property
    def stalk_k(self):
        return stalk(self.k, 0)

    @cached_property
    def stalk_S2(self):
        return stalk(self.S2reg, 0)

    def cdg_list(self) -> list:
        """Cdg modules over several rings, for sign and hom checks."""
        C, _, _ = cone_id(self.stalk_k)
        return [self.XK_cdg, self.D1.to_cdg(), self.stalk_k, self.stalk_S2, C, self.induced_stalk.to_cdg(),
                self.XK.suspend(1).to_cdg()]

    def graded_k(self, degree: int = 0) -> GradedModule:
        return GradedModule(self.dgS2, [degree], self.k.action)

    def describe(self, name: str) -> dict:
        objects = {
            "F": self.F1, "S2": self.S2, "S4": self.S4, "k": self.k, "K": self.K, "X_K": self.XK,
            "D1": self.D1, "D_bad": self.D_bad, "S_w": self.Sw, "P_x": self.periodic_S2,
            "iota0_k": self.stalk_k, "iota0_S2": self.stalk_S2, "K_stalk": self.induced_stalk,
        }
        if name not in objects:
            raise KeyError(f"unknown corpus object {name!r}; known: {', '.join(sorted(objects))}")
        return describe_object(objects[name], name)


def describe_object(obj, name: str = "") -> dict:
    from .graded import CdgRing
    from .mixed import check_duplex, check_mixed
    out = {"name": name, "type": type(obj).__name__}
    if isinstance(obj, FinAlgebra):
        out.update(dim=obj.dim, field=repr(obj.field), commutative=obj.is_commutative,
                   local=obj.is_local, radical_dim=int(obj.radical_basis.shape[1]))
    elif isinstance(obj, FinModule):
        out.update(dim=obj.dim, algebra=obj.algebra.name)
    elif isinstance(obj, CdgRing):
        out.update(dim=obj.dim, grading=str(obj.grading), degrees=[int(d) for d in obj.degrees],
                   curvature=[int(v) for v in obj.curvature] if obj.field.p else [str(v) for v in obj.curvature])
    elif isinstance(obj, MixedComplex):
        out.update(dims={str(k): v for k, v in obj.dims().items()}, valid=not check_mixed(obj))
    elif isinstance(obj, Duplex):
        out.update(dims=[obj.M0.dim, obj.M1.dim], valid=not check_duplex(obj))
    elif isinstance(obj, GradedModule):
        out.update(dims={str(k): v for k, v in obj.dims().items()}, ring=obj.ring.name)
    return out


@lru_cache(maxsize=8)
def standard_corpus(p: int = 3) -> Corpus:
    return Corpus(p)
