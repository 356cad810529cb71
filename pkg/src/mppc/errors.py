"""Exception types shared across the package."""


class MppcError(Exception):
    """Base class for all package errors."""


class PrecisionError(MppcError):
    """A requested numerical guarantee cannot be met at the working precision."""


class NotIncreasingError(MppcError):
    """A sequence violates strict monotonicity."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ParseError(MppcError):
    """Malformed input file."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class SizeError(MppcError):
    """Input exceeds a configured work or memory budget."""


class SieveLimitError(MppcError):
    pass


class SmoothnessError(MppcError):
    """A support element has a prime factor above the active prime limit."""


class QuadratureError(MppcError):
    pass


class SeriesError(MppcError):
    pass


class DomainError(MppcError):
    """Argument outside the mathematical domain of an operation."""
