"""Errors raised by the restricted three-body core."""

from numerics.exceptions import NumericalError, ParameterError


class MuRangeError(ParameterError):
    """Raised when the mass ratio lies outside (0, 1/2]."""


class PrimaryCollisionError(NumericalError):
    """Raised when the Hamiltonian is evaluated at a primary."""


class LagrangePointError(NumericalError):
    """Raised when a Lagrange point cannot be located."""


class SpectrumError(NumericalError):
    """Raised when a spectrum does not split into one real and one imaginary pair."""
