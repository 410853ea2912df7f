"""Shared exception types; the CLI maps these onto exit codes."""

from __future__ import annotations


class DomainError(ValueError):
    """A precondition on values or dimensions is violated."""


class ParseError(ValueError):
    """Malformed input data; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ResourceLimitError(RuntimeError):
    """An enumeration budget would be exceeded; the message names the limit."""


class IntegrityError(RuntimeError):
    """An internal re-verification failed: construction bug or corrupt data."""
