"""Exception types raised across the package."""


class HardyRepError(Exception):
    """Base class for all package errors."""


class ValidationError(HardyRepError, ValueError):
    """An input object violates one of its invariants."""


class DomainError(HardyRepError, ValueError):
    """A point lies outside the open unit disc."""


class UnsupportedError(HardyRepError, TypeError):
    """The operation is not defined for this variant or regime."""


class CapacityError(HardyRepError, OverflowError):
    """A request would leave the 64-bit integer range."""


class PreconditionError(HardyRepError, ValueError):
    """A mathematical precondition of the operation does not hold."""


class TruncationError(HardyRepError, ArithmeticError):
    """A finite truncation cannot meet the requested tolerance."""


class ConstructionError(HardyRepError, ValueError):
    """No object with the requested properties exists within the search window."""
