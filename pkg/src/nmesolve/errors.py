"""Exception hierarchy.

Invalid inputs derive from :class:`ValueError`; numerical failures derive
from :class:`ArithmeticError`, so callers can catch either family with the
builtin type.
"""


class MatrixEquationError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(MatrixEquationError, ValueError):
    pass


class DimensionMismatch(InvalidInput):
    pass


class InvalidAlpha(InvalidInput):
    pass


class UnknownSolverId(InvalidInput):
    pass


class EmptyInput(InvalidInput):
    pass


class NumericalError(MatrixEquationError, ArithmeticError):
    pass


class NotPositiveDefinite(NumericalError):
    pass


class RankDeficient(NotPositiveDefinite):
    """``D^T D`` could not be Cholesky factored."""


class SingularTarget(NumericalError):
    """``T^T T`` is singular at machine scale; no SPD minimizer exists."""


class NoConvergence(NumericalError):
    pass


class Breakdown(NumericalError):
    """An outer iteration hit a singular inner subproblem."""
