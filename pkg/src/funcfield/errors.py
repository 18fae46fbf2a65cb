"""Exception hierarchy.

Two families matter to callers: mathematical domain errors (no inverse, no
square root, divergent substitution, ...) and precision exhaustion (the
truncation window is too small to certify the requested quantity).  The CLI
maps them to different exit codes.
"""


class FuncFieldError(Exception):
    pass


class DomainError(FuncFieldError, ValueError):
    """The operation is undefined for the given input."""


class NoSquareRoot(DomainError):
    pass


class DivergentSubstitution(DomainError):
    pass


class NotInImage(DomainError):
    """A diagonal matrix has no preimage of the requested shape."""


class PrecisionError(FuncFieldError, ArithmeticError):
    """The available truncation window cannot certify the result."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required
