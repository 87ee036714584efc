"""Domain error hierarchy.

Every error raised by the domain layer derives from ``KheckeError`` (itself a
``ValueError``) so presentation code can map the whole family to a usage
failure while tests can still assert on the precise subclass.
"""
from typing import Any

Cell = tuple[int, int]


class KheckeError(ValueError):
    """Base class for all domain errors."""

    def __init__(self, message: str, **context: Any) -> None:
        super().__init__(message)
        self.context = context

    def __str__(self) -> str:
        base_message = super().__str__()
        if self.context:
            details = ", ".join(f"{key}: {value}" for key, value in self.context.items())
            return f"{base_message} ({details})"
        return base_message


class InvalidShapeError(KheckeError):
    """A partition or skew shape violates its invariants."""


class InvalidWordError(KheckeError):
    """A word contains a non-positive letter or cannot be parsed."""


class InvalidTableauError(KheckeError):
    """A tableau filling violates row/column conditions.

    ``cell`` is the 1-indexed (row, col) of the first violated invariant when known.
    """

    def __init__(self, message: str, cell: Cell | None = None, **context: Any) -> None:
        if cell is not None:
            context = {"cell": cell, **context}
        super().__init__(message, **context)
        self.cell = cell


class NotACornerError(KheckeError):
    """Reverse insertion was asked to start from a cell that is not a corner."""


class InsertionError(KheckeError):
    """Hecke insertion reached a state that valid inputs never produce."""


class NotInitialError(KheckeError):
    """An operation on KPR classes received a word that is not initial."""


class NotURTError(KheckeError):
    """A counting rule or URT specialization received a tableau that is not a URT."""


class SearchBoundError(KheckeError):
    """A bounded search exceeded its memory cap."""


class WindowError(KheckeError):
    """A truncation window (variables, degree) is too small for the request."""


class NonSymmetricError(KheckeError):
    """Basis expansion received a polynomial that is not symmetric."""
