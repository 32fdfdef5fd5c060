"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(RuntimeError):
    """An iterative scheme failed to meet its tolerance.

    The best available estimate is attached as ``result`` (a QuadratureResult
    for quadrature routines) so callers can still inspect it.
    """

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class ConsistencyError(ArithmeticError):
    """An internal cross-check failed (for example, an imaginary part that
    should cancel did not). Indicates a bug or severe numerical degradation,
    never a user error."""
