"""Exception hierarchy for the berger_spheres package."""

from __future__ import annotations


class BergerError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BergerError, ValueError):
    """A parameter is outside the operation's domain (e.g. t <= 0, k < 0)."""


class AdmissibilityError(DomainError):
    """The (k, j) pair violates the admissibility constraints 0 <= j <= k, k - j even."""


class UnsupportedQueryError(BergerError):
    """The requested quantity is not provided for this family."""


class NoDegeneracyError(BergerError):
    """The requested degeneracy value does not exist (the gap function has no positive root)."""


class ResourceLimitError(BergerError):
    """A computation would exceed a configured size limit.

    Attributes:
        required: the size the computation would need.
        limit: the configured cap it exceeds.
    """

    def __init__(self, message: str, *, required: int, limit: int) -> None:
        super().__init__(message)
        self.required = required
        self.limit = limit


class BracketError(BergerError):
    """A root bracket does not have a certified sign change."""


class ConsistencyError(BergerError):
    """A closed-form value failed its independent cross-check."""
