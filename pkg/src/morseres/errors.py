"""Shared exception types."""


class RingMismatchError(ValueError):
    """Operands do not share one variable set."""


class CapacityError(ValueError):
    """An enumeration would exceed its stated size bound."""


class NonMinimalIdealError(ValueError):
    """Generating set is not minimal; caller should minimalize first."""


class InvariantViolation(RuntimeError):
    """A construction produced data that contradicts a guaranteed property."""
