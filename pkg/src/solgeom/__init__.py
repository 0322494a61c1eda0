"""Translation-distance geometry of Sol space: balls, bisectors, circumspheres,
and lattice-like ball and cylinder packings and coverings."""

from .core import (
    ORIGIN,
    CurveParams,
    SolPoint,
    apply_stabilizer,
    conjugate,
    curve_params,
    curve_point,
    invert,
    multiply,
    relative_coordinates,
    translation_distance,
    translation_distances,
)
from .errors import ConvergenceError, DegenerateInputError, SolGeometryError
from .lattice import FundamentalLattice, make_lattice

__all__ = [
    "ORIGIN",
    "ConvergenceError",
    "CurveParams",
    "DegenerateInputError",
    "FundamentalLattice",
    "SolGeometryError",
    "SolPoint",
    "apply_stabilizer",
    "conjugate",
    "curve_params",
    "curve_point",
    "invert",
    "make_lattice",
    "multiply",
    "relative_coordinates",
    "translation_distance",
    "translation_distances",
]
