"""Symplectic polar coordinates."""

from __future__ import annotations

from numerics.precision import arithmetic_of
from rpc3bp.states import CartesianState

from .exceptions import OriginError
from .states import PolarState


def cart_to_polar(s: CartesianState) -> PolarState:
    """Cartesian to ``(r, theta, R, G)`` with ``R = q.p/r`` and ``G = q1 p2 - q2 p1``."""
    arith = arithmetic_of(*s.components)
    r_sq = s.q1 * s.q1 + s.q2 * s.q2
    if float(r_sq) == 0.0:
        msg = "polar coordinates are undefined at the origin"
        raise OriginError(msg)
    r = arith.sqrt(r_sq)
    theta = arith.atan2(s.q2, s.q1)
    radial = (s.q1 * s.p1 + s.q2 * s.p2) / r
    angular = s.q1 * s.p2 - s.q2 * s.p1
    return PolarState(r, theta, radial, angular)


def polar_to_cart(p: PolarState) -> CartesianState:
    """Inverse of :func:`cart_to_polar`."""
    if float(p.r) <= 0.0:
        msg = f"radius must be positive, got {float(p.r)!r}"
        raise OriginError(msg)
    arith = arithmetic_of(p.r, p.theta, p.R, p.G)
    c, s = arith.cos(p.theta), arith.sin(p.theta)
    tangential = p.G / p.r
    return CartesianState(p.r * c, p.r * s, p.R * c - tangential * s, p.R * s + tangential * c)
