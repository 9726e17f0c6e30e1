"""Exception types shared across the package."""


class Error(Exception):
    """Base class for all splitnls errors."""


class DimensionError(Error):
    """Raised when array shapes are incompatible (non-square, mismatched lengths)."""


class ParameterError(Error):
    """Raised when a scalar argument violates its documented domain."""


class UnsupportedOrderError(ParameterError):
    """Raised when an iterated-integral or correction order is not implemented."""


class ConfigError(Error):
    """Raised on malformed or invalid experiment configuration text.

    Attributes:
        line: 1-based line number of the offending entry, or None when the
            error is not tied to a specific line.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BlowupError(Error):
    """Raised when a trajectory produces non-finite state entries.

    Attributes:
        step: index of the first step whose output was non-finite.
    """

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step
