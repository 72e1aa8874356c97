"""Exception hierarchy.

Every validation failure carries the name of the violated constraint so the
CLI can report it and map it to exit code 2.
"""


class HardySharpError(Exception):
    """Base class for all library errors."""


class ValidationError(HardySharpError, ValueError):
    """A parameter tuple violates a hypothesis of the inequalities."""

    constraint = "validation"

    def __init__(self, message, constraint=None):
        super().__init__(message)
        if constraint is not None:
            self.constraint = constraint


class DimensionError(ValidationError):
    constraint = "n>=1"


class RangeError(ValidationError):
    constraint = "range"


class ScalingError(ValidationError):
    constraint = "(gamma+n)/q+beta=(alpha+n)/p"


class ForwardConstraintError(ValidationError):
    constraint = "alpha<=beta*(p-1)"


class AdjointConstraintError(ValidationError):
    constraint = "(alpha+n)/p-beta>0"


class DegenerateSubstitutionError(ValidationError):
    constraint = "p>1"


class DomainError(HardySharpError, ValueError):
    """Evaluation outside (0, inf)."""


class DivergenceError(HardySharpError, ArithmeticError):
    """An integral or supremum is infinite."""


class UnsupportedExponentError(HardySharpError, ArithmeticError):
    """The result would leave the power-log family (log power above 1)."""


class UnsupportedError(HardySharpError):
    """Operation not available for this input (e.g. unbounded support)."""


class SamplingError(HardySharpError, ArithmeticError):
    """A sampled field returned non-finite values."""
