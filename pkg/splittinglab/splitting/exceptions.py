"""Errors raised while computing invariant manifolds and their splitting."""

from numerics.exceptions import NumericalError, ParameterError


class SeedOffsetError(ParameterError):
    """Raised when the seed offset lies outside [1e-9, 1e-5]."""


class SectionRangeError(ParameterError):
    """Raised when a section angle lies outside the range the manifolds reach."""


class MuFloorError(ParameterError):
    """Raised when the mass ratio is below the supported floor."""


class FitDesignError(ParameterError):
    """Raised when a sweep is too small or too narrow to fit."""


class PrimaryApproachError(NumericalError):
    """Raised when a manifold passes closer to a primary than allowed."""


class SectionCrossingError(NumericalError):
    """Raised when a located crossing does not satisfy the section condition."""


class SplittingFloorError(NumericalError):
    """Raised when the splitting falls below the numerical floor of the precision in use."""


class GraphFoldError(NumericalError):
    """Raised when a manifold is not a graph over the separatrix time on the requested window."""
