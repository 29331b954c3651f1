"""Exact truncated computations for biquantization of Lie bialgebras."""

from .coeff import TruncSeries, inflate, quotient_project, series_invert, series_mul
from .envelope import EnvElement, PBWAlgebra, TensorElement
from .liebialg import LieBialgebra, build_double, check_axioms, dualize, flip

__all__ = [
    "EnvElement",
    "LieBialgebra",
    "PBWAlgebra",
    "TensorElement",
    "TruncSeries",
    "build_double",
    "check_axioms",
    "dualize",
    "flip",
    "inflate",
    "quotient_project",
    "series_invert",
    "series_mul",
]
