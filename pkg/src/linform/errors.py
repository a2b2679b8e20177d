"""Exception types raised across the package."""


class LinformError(Exception):
    """Base class for every error raised by linform."""


class NotPrime(LinformError, ValueError):
    pass


class Reducible(LinformError, ValueError):
    pass


class NoDefaultModulus(LinformError, ValueError):
    pass


class DivisionByZero(LinformError, ZeroDivisionError):
    pass


class FieldMismatch(LinformError, ValueError):
    pass


class LengthMismatch(LinformError, ValueError):
    pass


class AllZero(LinformError, ValueError):
    pass


class WrongRhsMode(LinformError, ValueError):
    pass


class RhsMismatch(LinformError, ValueError):
    pass


class BudgetExceeded(LinformError, RuntimeError):
    pass


class NotRealRange(LinformError, ValueError):
    pass


class NumericalInconsistency(LinformError, ArithmeticError):
    pass


class NotApplicable(LinformError, ValueError):
    pass


class ExhaustedTries(LinformError, RuntimeError):
    pass


class CSearchFailed(LinformError, RuntimeError):
    pass


class ArityMismatch(LinformError, ValueError):
    pass


class OutOfRange(LinformError, ValueError):
    pass


class ParseError(LinformError, ValueError):
    """Malformed text input; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position
