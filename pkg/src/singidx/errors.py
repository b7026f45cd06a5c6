"""Exception types raised by the engine."""


class SingIdxError(Exception):
    """Base class for all engine errors."""


class ParseError(SingIdxError, ValueError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))


class ContextMismatch(SingIdxError, ValueError):
    pass


class ValidationError(SingIdxError, ValueError):
    """Shape or consistency problem in user input."""


class CompositionNonzero(SingIdxError):
    """Two maps handed to a subquotient do not compose to zero."""


class NonIsolated(SingIdxError):
    """A quotient that must be finite-dimensional is not.

    ``blocks`` lists the (1-based) collection blocks whose degeneracy locus
    has excess dimension, when that could be determined.  ``report`` carries
    partial results computed before the failure.
    """

    def __init__(self, message: str, blocks=(), report=None):
        self.blocks = tuple(blocks)
        self.report = report
        super().__init__(message)


class NotICIS(SingIdxError):
    pass


class SamplingExhausted(SingIdxError):
    pass


class Disagreement(SingIdxError):
    """Two routes that must agree returned different values."""

    def __init__(self, message: str, values=None):
        self.values = values
        super().__init__(message)
