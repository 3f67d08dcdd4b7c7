"""Errors raised by the averaged pendulum."""

from numerics.exceptions import NumericalError, ParameterError


class CollisionAngleError(ParameterError):
    """Raised when the potential is evaluated at the collision angle lam = +-pi."""


class SeparatrixEnergyError(NumericalError):
    """Raised when a separatrix table drifts off the level H_pend = -1/2."""
