"""Exception hierarchy for torsio."""


class TorsioError(Exception):
    """Base class for all torsio-specific errors."""


class NotConvex(TorsioError):
    """Input points do not describe a convex polygon."""


class Degenerate(TorsioError):
    """Polygon has (numerically) zero area or fewer than 3 usable vertices."""


class NumericalCollapse(TorsioError):
    """Offset engine produced an invalid intermediate polygon."""


class OracleMismatch(TorsioError):
    """Two independent computations of the same quantity disagree."""


class NotStadium(TorsioError):
    """Polygon first loses a side strictly before its extinction time."""


class NoParallelSides(TorsioError):
    """Stadium construction needs a core with a pair of parallel edges."""


class NotCircumscribed(TorsioError):
    """Polygon's incircle does not touch every side."""


class GapTooWide(TorsioError):
    """Consecutive tangency angles differ by >= pi; tangent lines cannot close."""


class MeshFailure(TorsioError):
    """Triangulation violated a structural requirement."""


class SingularSystem(TorsioError):
    """Linear FEM system could not be factorized."""


class NonConvergent(TorsioError):
    """Adaptive quadrature hit its refinement limit."""


class NoConvergence(TorsioError):
    """Nonlinear FEM iteration hit its iteration cap."""


class BadSchedule(TorsioError):
    """Regularization schedule is not a decreasing list of positive numbers."""


class ParseError(TorsioError):
    """Malformed CLI shape specification."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class RangeError(TorsioError):
    """Shape parameter outside its documented range."""
