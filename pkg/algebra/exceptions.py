"""
Exceptions raised by the algebra services.
"""
from typing import Any, Optional


class CentroidKitError(Exception):
    """Base class for all toolkit errors."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class AlgebraInputError(CentroidKitError):
    """Malformed or inapplicable input (bad dimensions, non-ideal, invalid cocycle...)."""


class NotSplitError(CentroidKitError):
    """An operator has a spectrum that is not rational, or is not diagonalizable."""


class ResourceLimitError(CentroidKitError):
    """A closure computation exceeded its dimension bound."""


class InvariantViolation(CentroidKitError):
    """An exact internal consistency check failed."""
