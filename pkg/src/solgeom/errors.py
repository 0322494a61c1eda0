class SolGeometryError(Exception):
    """Base class for errors raised by solgeom."""


class DegenerateInputError(SolGeometryError, ValueError):
    """Input is geometrically degenerate (zero-length curve, flat tetrahedron, ...)."""


class ConvergenceError(SolGeometryError, RuntimeError):
    """An iterative solver or quadrature did not reach its tolerance."""
