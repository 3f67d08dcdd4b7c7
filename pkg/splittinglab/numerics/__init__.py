"""Numerical kernels: precision modes, integration, quadrature and roots."""

from .exceptions import LabError, NumericalError, ParameterError
from .integrator import (
    DenseTrajectory,
    Direction,
    EventResult,
    EventSpec,
    IntegrationResult,
    IntegratorConfig,
    integrate,
    integrate_fixed,
    integrate_to_event,
)
from .precision import DoubleWord, DoubleWordComplex, Precision, arithmetic_of, get_arithmetic
from .quadrature import Endpoint, QuadratureResult, QuadratureSpec, half_line_quadrature, tanh_sinh_quadrature
from .roots import find_root

__all__ = [
    "DenseTrajectory",
    "Direction",
    "DoubleWord",
    "DoubleWordComplex",
    "Endpoint",
    "EventResult",
    "EventSpec",
    "IntegrationResult",
    "IntegratorConfig",
    "LabError",
    "NumericalError",
    "ParameterError",
    "Precision",
    "QuadratureResult",
    "QuadratureSpec",
    "arithmetic_of",
    "find_root",
    "get_arithmetic",
    "half_line_quadrature",
    "integrate",
    "integrate_fixed",
    "integrate_to_event",
    "tanh_sinh_quadrature",
]
