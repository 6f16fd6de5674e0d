"""Exception types raised across the certifier.

Input problems derive from ValueError and computational limits from
RuntimeError, so callers that already catch those keep working.
"""

from typing import Optional


class WordParseError(ValueError):
    """Word text could not be parsed."""


class PreconditionError(ValueError):
    """An operation was called on an input outside its contract."""


class DimensionError(ValueError):
    """Matrix shapes do not agree or exceed the oracle-scale cap."""


class SymmetryError(ValueError):
    """A non-symmetric matrix was bound to a symmetric variable."""


class HypothesisError(ValueError):
    """A graph does not satisfy the hypotheses a construction needs."""

    def __init__(self, message: str, failed: Optional[list] = None):
        super().__init__(message)
        self.failed = failed or []


class SizeGuardError(RuntimeError):
    """An enumeration would exceed its configured size guard."""

    def __init__(self, guard: str, limit: int, actual: int):
        super().__init__(f"size guard '{guard}' exceeded: {actual} > {limit}")
        self.guard = guard
        self.limit = limit
        self.actual = actual


class ConvergenceError(RuntimeError):
    """Eigenvalue computation did not meet its residual bound."""
