"""Exception hierarchy shared by all modules.

Everything derives from PopucError so callers (in particular the CLI) can
separate library failures from genuine bugs.  Errors that indicate bad user
input additionally derive from ValueError; errors that indicate a failed
mathematical check derive from ArithmeticError.
"""


class PopucError(Exception):
    """Base class for all errors raised by this package."""


class InvalidModulusError(PopucError, ValueError):
    """A modulus or length argument is out of range (e.g. M = 0)."""


class NonPrimeError(PopucError, ValueError):
    """A parameter that must be an odd prime is not one."""


class DuplicateOrderError(PopucError, ValueError):
    """A Kronecker spec contains repeated cyclotomic orders."""


class DegreeBoundError(PopucError, ValueError):
    """Polynomial degree exceeds the reversal bound n."""


class NonzeroRemainderError(PopucError, ArithmeticError):
    """An exact polynomial division left a remainder."""


class InsufficientMomentsError(PopucError, ValueError):
    """A moment sequence is too short for the requested operation."""


class SingularMomentError(PopucError, ArithmeticError):
    """Some Toeplitz determinant of the input moments is not positive."""


class TerminalMassError(PopucError, ArithmeticError):
    """The final reflection coefficient is not unimodular, so the ladder
    does not close into a finite para-orthogonal system."""


class UnimodularConstantTermError(PopucError, ArithmeticError):
    """Inverse recurrence descent hit |constant term| = 1 and cannot
    continue."""


class InvalidCharacteristicError(PopucError, ArithmeticError):
    """A characteristic polynomial does not generate a valid system."""


class InteriorCoefficientOutOfRangeError(PopucError, ArithmeticError):
    """A reflection coefficient below the terminal one has |a| >= 1."""


class DualityViolationError(PopucError, ArithmeticError):
    """An exact mirror-duality assertion failed (implementation bug)."""


class WeightCheckFailureError(PopucError, ArithmeticError):
    """A floating-point weight identity exceeded its tolerance."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InternalInconsistencyError(PopucError):
    """Two independent computations of the same quantity disagree; this
    always signals an implementation bug, never a user error."""
