"""Exception hierarchy shared by every module."""


class SpheroError(Exception):
    """Base class for all errors raised by this package."""


class PoleError(SpheroError, ValueError):
    """A parameter sits on a pole (nonpositive integer gamma argument, projection pole)."""


class DomainError(SpheroError, ValueError):
    """An argument lies outside the supported evaluation domain."""


class ConvergenceError(SpheroError, ArithmeticError):
    """A truncated series failed to meet its stopping rule within the term budget."""


class NonFiniteError(SpheroError, ArithmeticError):
    """A NaN or infinity appeared in an intermediate result."""


class SpheroOverflowError(SpheroError, OverflowError):
    """A quantity exceeds the double-precision range even in log space."""


class SingularityError(SpheroError, ZeroDivisionError):
    """Division by a (numerically) vanishing quantity, or a degenerate frame."""
