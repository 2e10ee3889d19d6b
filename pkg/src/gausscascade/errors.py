"""Exception hierarchy shared by every module.

The CLI maps each class onto a process exit code, so keep the hierarchy flat
and the meaning of each branch narrow.
"""


class CascadeError(Exception):
    """Base class for all errors raised by gausscascade."""


class ParameterError(CascadeError, ValueError):
    """A scalar argument is out of range or not finite."""


class SchemaError(ParameterError):
    """A JSON document does not follow the expected schema."""


class InvalidStateError(CascadeError, ValueError):
    """A matrix violates a structural invariant of a state or subsystem."""

    invariant = "state"


class SymmetryError(InvalidStateError):
    invariant = "symmetry"


class DefinitenessError(InvalidStateError):
    invariant = "positive-definiteness"


class NotPureError(InvalidStateError):
    invariant = "purity"


class ShapeError(CascadeError, ValueError):
    """Operands have incompatible dimensions or channel counts."""


class StabilityError(CascadeError, ArithmeticError):
    """The drift is not Hurwitz, so no unique steady state exists."""
