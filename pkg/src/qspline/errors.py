"""Exception and warning types raised by qspline."""


class QSplineError(Exception):
    """Base class for all qspline errors."""


class DomainError(QSplineError, ValueError):
    """Argument outside the domain of a function (e.g. ``0**q`` with Sc(q) <= 0)."""


class GammaPoleError(DomainError):
    """Gamma function evaluated at a pole (nonpositive integer, real argument)."""


class PreconditionError(QSplineError, ValueError):
    """An operation was called with an order or parameter it does not accept."""


class TruncationError(QSplineError, RuntimeError):
    """A series or lattice sum could not be truncated within its budget."""


class ConditioningWarning(RuntimeWarning):
    """Alternating sum lost many digits to cancellation."""


class SlowConvergenceWarning(RuntimeWarning):
    """Series converges too slowly to reach the requested tolerance cheaply."""


class NonMonotoneWarning(RuntimeWarning):
    """A sequence expected to decrease did not."""
