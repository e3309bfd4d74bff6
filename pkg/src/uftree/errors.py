"""Exception types shared across the package."""

from __future__ import annotations


class FormatError(ValueError):
    """A text input (tree file, certificate, op log, instance) is malformed.

    Carries the 1-based line number when one is known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidTreeError(ValueError):
    """A structurally well-formed input failed tree validation."""

    def __init__(self, reason: str, node: int | None = None):
        self.reason = reason
        self.node = node
        detail = reason if node is None else f"{reason} (node {node})"
        super().__init__(detail)


class CapExceeded(RuntimeError):
    """A configured resource cap (node count, weight count, budget) was hit."""
