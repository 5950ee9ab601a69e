"""Exact computations with cdg modules, matrix factorizations and their bar
resolutions over finite-dimensional algebras."""

from .algebra import FinAlgebra, FinModule, direct_sum, quotient, submodule
from .field import F3, Field
from .graded import CdgModule, CdgRing, GradedModule, cone_id, dg_hom, g_minus, g_plus, suspend
from .mixed import Duplex, MixedComplex, completed_bar, fold, sbar
from .tame import TameComplex

__version__ = "0.1.0"

__all__ = [
    "F3", "Field", "FinAlgebra", "FinModule", "direct_sum", "quotient", "submodule",
    "CdgModule", "CdgRing", "GradedModule", "cone_id", "dg_hom", "g_minus", "g_plus", "suspend",
    "Duplex", "MixedComplex", "completed_bar", "fold", "sbar", "TameComplex",
]
