"""Planar circular restricted three-body problem in the rotating frame."""

from .hamiltonian import (
    cartesian_rhs,
    flow,
    gradient,
    hamiltonian_h,
    involution_phi,
    jacobi_constant,
    jacobian,
    vector_field,
)
from .lagrange import LagrangeLabel, LagrangePoint, LagrangeSet, Linearization, lagrange_points, linearize
from .params import MuParam
from .states import CartesianState

__all__ = [
    "CartesianState",
    "LagrangeLabel",
    "LagrangePoint",
    "LagrangeSet",
    "Linearization",
    "MuParam",
    "cartesian_rhs",
    "flow",
    "gradient",
    "hamiltonian_h",
    "involution_phi",
    "jacobi_constant",
    "jacobian",
    "lagrange_points",
    "linearize",
    "vector_field",
]
