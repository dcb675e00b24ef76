"""Exception types shared across the package."""

from __future__ import annotations


class TileTopoError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(TileTopoError, ValueError):
    """A parameter is outside its documented domain (bad p, degenerate box, ...)."""


class AddressError(TileTopoError, ValueError):
    """A word/address refers to a digit index that does not exist."""


class ResourceBudgetError(TileTopoError, RuntimeError):
    """An enumeration would exceed the caller-supplied size budget."""


class DomainError(TileTopoError, ValueError):
    """A value fails a membership precondition (e.g. point not in the patch)."""


class CertificateError(TileTopoError, RuntimeError):
    """An internal cross-check failed: computed certificate disagrees with theory."""


class PredicateError(TileTopoError, RuntimeError):
    """An intersection predicate raised while classifying a pair of pieces."""

    def __init__(self, pair: tuple, message: str = "") -> None:
        self.pair = pair
        super().__init__(message or f"intersection predicate failed on pair {pair!r}")
