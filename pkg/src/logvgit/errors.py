"""Exception hierarchy; the CLI maps each class to an exit status."""

from __future__ import annotations


class VGITError(Exception):
    """Base class for all errors raised by the package."""

    exit_code = 1


class ParseError(VGITError, ValueError):
    """Malformed polynomial text, record, or input file."""

    exit_code = 2

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DomainError(VGITError, ValueError):
    """Input is well formed but outside the mathematical domain of an operation."""

    exit_code = 3


class EnvelopeError(VGITError, RuntimeError):
    """Requested computation exceeds the configured resource envelope."""

    exit_code = 4
