"""
Exception hierarchy for the timespace library.

Every contract violation raises a subclass of ValidationError; the CLI
maps those to exit code 1 and plain OSError to exit code 2.
"""


class TimespaceError(Exception):
    """Base class for all library errors."""
    pass


class ValidationError(TimespaceError):
    """Raised when an input or a precondition is invalid."""
    pass


class SceneSyntaxError(ValidationError):
    """Raised when a scene file line cannot be parsed."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class NonpositiveSpeed(ValidationError):
    pass


class NonpositiveFocal(ValidationError):
    pass


class DuplicateCamera(ValidationError):
    pass


class BehindCamera(ValidationError):
    """Raised when a point has nonpositive depth ahead of the camera."""
    pass


class MismatchedTrack(ValidationError):
    pass


class DegenerateFlow(ValidationError):
    """Raised when the angular rate is too small to invert."""
    pass


class OnAxis(ValidationError):
    """Raised when a point lies on the motion axis (the FOE)."""
    pass


class TooShort(ValidationError):
    pass


class IdMismatch(ValidationError):
    pass


class BadRange(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class MalformedRow(ValidationError):
    """Raised when a CSV row cannot be decoded."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")
