"""Shared exception types."""


class ParseError(ValueError):
    """Malformed textual input; carries the offending character position."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class CompositionError(ValueError):
    """Boundary words, presentations or coefficient systems do not match."""


class EnumerationError(ValueError):
    """A requested enumeration would be infinite (e.g. free coefficients)."""
