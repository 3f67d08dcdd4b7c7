"""Coordinate tower: Cartesian, polar, Poincare, scaled and separatrix coordinates."""

from .checks import CoordinateCheck, first_order_residual, run_coordinate_checks, symplectic_defect
from .kepler import kepler_solve
from .poincare import (
    cart_to_poincare,
    h0_poincare,
    first_order_series,
    poincare_to_cart,
    poincare_to_polar,
    polar_to_poincare,
    real_slice,
)
from .polar import cart_to_polar, polar_to_cart
from .scaling import L3Shift, equi_shift, equi_unshift, l3_shift, scale, unscale
from .separatrix_coords import DEFAULT_U_FLOOR, SeparatrixLike, from_separatrix_coords, to_separatrix_coords
from .states import PoincareState, PolarState, ScaledState, SeparatrixCoordState, wrap_angle

__all__ = [
    "DEFAULT_U_FLOOR",
    "CoordinateCheck",
    "L3Shift",
    "PoincareState",
    "PolarState",
    "ScaledState",
    "SeparatrixCoordState",
    "SeparatrixLike",
    "cart_to_poincare",
    "cart_to_polar",
    "equi_shift",
    "equi_unshift",
    "from_separatrix_coords",
    "h0_poincare",
    "kepler_solve",
    "l3_shift",
    "first_order_series",
    "first_order_residual",
    "poincare_to_cart",
    "poincare_to_polar",
    "polar_to_cart",
    "polar_to_poincare",
    "real_slice",
    "run_coordinate_checks",
    "scale",
    "symplectic_defect",
    "to_separatrix_coords",
    "unscale",
    "wrap_angle",
]
