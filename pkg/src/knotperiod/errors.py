"""Exception types shared across the package."""


class KnotPeriodError(Exception):
    """Base class for errors raised by this package."""


class ParseError(KnotPeriodError, ValueError):
    """Malformed text input. ``pos`` is the character offset, when known."""

    def __init__(self, message, pos=None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos


class InvalidInputError(KnotPeriodError, ValueError):
    """Input parsed, but violates a structural invariant."""


class NotDivisibleError(KnotPeriodError, ArithmeticError):
    """Exact division was requested but the divisor does not divide."""


class ComputationError(KnotPeriodError, ArithmeticError):
    """A computation could not be completed (degenerate data, invariant violation)."""
