"""Errors raised by the inner equation and the Stokes constant pipeline."""

from numerics.exceptions import NumericalError, ParameterError


class InnerDomainError(ParameterError):
    """Raised when a point or a path lies outside the inner domains."""


class BranchCutError(NumericalError):
    """Raised when ``1 + J`` reaches the branch cut of the square root."""


class DenominatorError(NumericalError):
    """Raised when ``1 + dK/dW`` comes too close to zero."""


class SeedResidualError(NumericalError):
    """Raised when the Picard seed has not settled at the path start."""


class DecayBoundError(NumericalError):
    """Raised when a solution violates the weighted decay bounds along the path."""


class DifferenceFloorError(NumericalError):
    """Raised when the difference of the two solutions is lost in rounding."""


class StokesSpreadError(NumericalError):
    """Raised when Stokes constant estimates at different path heights disagree."""
