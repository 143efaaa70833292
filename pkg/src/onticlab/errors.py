"""Exception types shared across the package."""


class OnticLabError(Exception):
    """Base class for all onticlab errors."""


class DimensionError(OnticLabError, ValueError):
    """State/operator dimensions do not match or exceed the configured cap."""


class NormalizationError(OnticLabError, ValueError):
    """A vector or distribution that must be normalized is not."""


class UnsupportedMeasurementError(OnticLabError, ValueError):
    """The model's response function does not cover this measurement."""


class UnsupportedModelError(OnticLabError, ValueError):
    """The requested operation needs model features this model lacks."""


class PointMassError(UnsupportedModelError):
    """Operation needs a proper density but the model is a point mass."""


class ResolutionError(OnticLabError, ValueError):
    """A grid resolution is below the supported minimum."""


class InfeasibleProposalError(OnticLabError, ValueError):
    """The proposal distribution puts zero mass where the target needs it."""
