"""Exception types shared across the package."""


class GhostError(Exception):
    """Base class for all package-specific errors."""


class ComponentMismatch(GhostError, ValueError):
    """Two weights living on different components of weight space were mixed."""


class PrecisionError(GhostError):
    """A truncated w-value does not determine the requested valuation."""


class CertificationError(GhostError):
    """The slope certificate could not be established below the degree cap."""


class ExternalDataError(GhostError):
    """An operation needs externally computed data that was not supplied."""
