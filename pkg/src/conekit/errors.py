"""Exception types shared across the package."""

from __future__ import annotations


class ConeError(Exception):
    """Base class for all conekit errors."""


class InvalidInputError(ConeError):
    """Raised for semantically invalid input (bad type combination, bad
    modulus, dimension mismatch, malformed monomial, ...)."""


class NotPointedError(ConeError):
    """Raised when a Hilbert basis is requested for a cone that is not
    pointed.  Carries a witness vector from the lineality space."""

    def __init__(self, lineality):
        self.lineality = tuple(lineality)
        super().__init__(
            "cone is not pointed; lineality space contains %s" % (self.lineality,)
        )


class NoGradingError(ConeError):
    """Raised when graded data (h-vector, Hilbert polynomial) is requested
    for a cone without a grading."""


class ParseError(ConeError):
    """Raised on malformed input or result files.  Carries the file label
    and the 1-based line number of the offending token."""

    def __init__(self, source, line, message):
        self.source = source
        self.line = line
        super().__init__("%s:%d: %s" % (source, line, message))


class IncompleteResultError(ConeError):
    """Raised when reading a result whose mandatory files are missing."""
