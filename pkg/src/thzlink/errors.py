"""Exception hierarchy.

Every input problem derives from ``ValueError`` so callers that only care
about "bad argument" can catch that; the CLI maps ``NumericError`` to a
separate exit status.
"""


class ThzLinkError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ThzLinkError, ValueError):
    """Argument outside the mathematical domain (e.g. non-positive power)."""


class ModelValidityError(ThzLinkError, ValueError):
    """Argument outside the validity range of an empirical model."""


class InterpolationError(ModelValidityError):
    """Query outside the span of a tabulated quantity."""


class AbsorptionTableError(ThzLinkError, ValueError):
    """Malformed absorption CSV."""


class ConfigurationError(ThzLinkError, ValueError):
    """Inconsistent simulation configuration."""


class NumericError(ThzLinkError, ArithmeticError):
    """A numerical procedure failed (e.g. root not bracketed)."""
