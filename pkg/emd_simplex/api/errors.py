# -*- coding: utf-8 -*-
"""Exception hierarchy for emd_simplex.

Everything raised on purpose derives from ``EmdError``. Input problems (bad histograms,
malformed instance files, out-of-range indices) derive from ``EmdInputError`` so the CLI
can map them to exit status 2 in one place.
"""
from __future__ import annotations

from typing import Optional

__all__ = [
    "EmdError",
    "EmdConfigError",
    "EmdInputError",
    "InvalidHistogramError",
    "ShapeMismatchError",
    "NotMonotoneError",
    "ParseError",
    "UnknownDotError",
    "BadIndexError",
    "EmptyFaceError",
    "DimensionTooSmallError",
    "DimensionTooLargeError",
    "UnknownExampleError",
    "BudgetExceededError",
]


class EmdError(Exception):
    """Base exception for emd_simplex."""


class EmdConfigError(EmdError):
    """Raised when configuration is missing or invalid."""


class EmdInputError(EmdError):
    """Raised when caller-supplied data violates a precondition."""


class InvalidHistogramError(EmdInputError):
    """Negative or non-integer counts, or no bins at all."""


class ShapeMismatchError(EmdInputError):
    """Histograms (or instance rows) disagree on bin count n or mass m."""


class NotMonotoneError(EmdInputError):
    """Cumulative heights decrease somewhere."""


class ParseError(EmdInputError):
    """Raised on instance-file syntax errors; carries a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1, source: str = "<string>") -> None:
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.source = source
        self.reason = message


class UnknownDotError(EmdInputError):
    """The dot is not an element of the union of the family."""


class BadIndexError(EmdInputError):
    """Vertex index outside 0..d, equal endpoints for an edge, or a negative level."""


class EmptyFaceError(EmdInputError):
    """The operation needs a nonempty face."""


class DimensionTooSmallError(EmdInputError):
    """The operation is undefined for the family's dimension (typically d = 0)."""


class DimensionTooLargeError(EmdInputError):
    """The family's dimension exceeds the configured practical bound."""


class UnknownExampleError(EmdInputError):
    """No built-in example with that name."""


class BudgetExceededError(EmdError):
    """Raised when an exhaustive oracle would enumerate more candidates than allowed."""

    def __init__(self, message: str, count: int, budget: Optional[int] = None) -> None:
        super().__init__(message)
        self.count = count
        self.budget = budget
