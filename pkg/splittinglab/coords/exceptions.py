"""Errors raised by the coordinate tower."""

from numerics.exceptions import NumericalError, ParameterError


class OriginError(ParameterError):
    """Raised when polar coordinates are requested at the origin."""


class OsculatingOrbitError(ParameterError):
    """Raised when the osculating two-body orbit is not a prograde ellipse."""


class KeplerDomainError(ParameterError):
    """Raised when an eccentricity lies outside [0, 1)."""


class KeplerConvergenceError(NumericalError):
    """Raised when Kepler's equation cannot be solved."""


class SeparatrixRangeError(ParameterError):
    """Raised when an angle lies outside the range covered by the separatrix."""


class SeparatrixFloorError(ParameterError):
    """Raised when the separatrix time falls below the configured floor."""


class L3ShiftUnavailableError(ParameterError):
    """Raised when the equilibrium shift is applied without a located L3."""
