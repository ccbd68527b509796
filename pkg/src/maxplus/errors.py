"""Exception hierarchy shared by every module of the package."""


class MaxPlusError(Exception):
    """Base class for all errors raised by :mod:`maxplus`."""


class InvalidElement(MaxPlusError, ValueError):
    pass


class NotAlgebraicallyClosed(MaxPlusError):
    pass


class EmptyNoZero(MaxPlusError, ValueError):
    pass


class MissingCapability(MaxPlusError):
    """The semiring lacks a flag that the operation requires."""


class StrongModeViolation(MaxPlusError):
    pass


class NoHull(MaxPlusError):
    pass


class OrderViolation(MaxPlusError, ValueError):
    """A lower bound is not below the matching upper bound."""


class ZeroDenominator(MaxPlusError, ValueError):
    pass


class InverseOfZero(MaxPlusError, ZeroDivisionError):
    pass


class DimensionMismatch(MaxPlusError, ValueError):
    pass


class SemiringMismatch(MaxPlusError, ValueError):
    pass


class NotSquare(DimensionMismatch):
    pass


class NoUnity(MissingCapability):
    pass


class NotSemidefinite(MaxPlusError):
    pass


class Diverged(MaxPlusError):
    pass


class BadNodeId(MaxPlusError, ValueError):
    pass


class DuplicateArc(MaxPlusError, ValueError):
    pass


class Reducible(MaxPlusError):
    pass


class NotEigenvalue(MaxPlusError):
    pass


class PrecheckFailed(MaxPlusError):
    pass


class NotStabilized(MaxPlusError):
    """Raised when the Bellman iteration exhausts ``max_iter``.

    The last iterate is kept on the exception as ``last``.
    """

    def __init__(self, message, last=None, iterations=None):
        super().__init__(message)
        self.last = last
        self.iterations = iterations


class NotASolution(MaxPlusError):
    pass


class NonpositiveH(MaxPlusError, ValueError):
    pass


class NegativeInput(MaxPlusError, ValueError):
    pass


class EmptyGrid(MaxPlusError, ValueError):
    pass


class GridMismatch(MaxPlusError, ValueError):
    pass


class ParseError(MaxPlusError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class ConfigError(MaxPlusError, ValueError):
    """Inconsistent command-line configuration."""
