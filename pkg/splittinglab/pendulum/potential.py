"""Potential and Hamiltonian of the averaged pendulum.

    V(lam)      = 1 - cos(lam) - 1/sqrt(2 + 2 cos(lam))
    H_pend      = -3/2 Lam^2 + V(lam)

The saddle at the origin sits on the level -1/2; the separatrix through it
turns at ``lam0 = arccos(1/2 - sqrt(2))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from numerics.precision import arithmetic_of

from .exceptions import CollisionAngleError

LAMBDA_0 = math.acos(0.5 - math.sqrt(2.0))
SEPARATRIX_ENERGY = -0.5
V_SECOND_AT_SADDLE = 7.0 / 8.0
SADDLE_EIGENVALUE = math.sqrt(3.0 * V_SECOND_AT_SADDLE)


@dataclass(frozen=True)
class PendulumState:
    """Angle and scaled action of the slow system."""

    lam: float
    Lam: float

    def __post_init__(self: PendulumState) -> None:
        """Reject the collision angle."""
        _collision_gap(self.lam)


def _collision_gap(lam: Any) -> Any:
    arith = arithmetic_of(lam)
    gap = 2 + arith.cos(lam) * 2
    if float(gap) <= 0.0:
        msg = f"lam={float(lam)!r} is the collision angle"
        raise CollisionAngleError(msg)
    return gap


def potential_V(lam: Any) -> Any:  # noqa: N802
    """The averaged potential; even in lam."""
    arith = arithmetic_of(lam)
    gap = _collision_gap(lam)
    return 1 - arith.cos(lam) - 1 / arith.sqrt(gap)


def potential_V_prime(lam: Any) -> Any:  # noqa: N802
    """First derivative ``sin(lam) (1 - (2 + 2 cos lam)^(-3/2))``."""
    arith = arithmetic_of(lam)
    gap = _collision_gap(lam)
    root = arith.sqrt(gap)
    return arith.sin(lam) * (1 - 1 / (gap * root))


def potential_V_second(lam: Any) -> Any:  # noqa: N802
    """Second derivative; equals 7/8 at the saddle."""
    arith = arithmetic_of(lam)
    gap = _collision_gap(lam)
    root = arith.sqrt(gap)
    s = arith.sin(lam)
    return arith.cos(lam) * (1 - 1 / (gap * root)) - s * s * 3 / (gap * gap * root)


def hamiltonian_pend(s: PendulumState) -> Any:
    """Energy ``-3/2 Lam^2 + V(lam)``."""
    return s.Lam * s.Lam * -1.5 + potential_V(s.lam)


def pendulum_rhs(s: PendulumState) -> tuple[Any, Any]:
    """Canonical equations ``lam' = -3 Lam``, ``Lam' = -V'(lam)``."""
    return s.Lam * -3, -potential_V_prime(s.lam)


def pendulum_field(t: float, y: np.ndarray) -> np.ndarray:
    """:func:`pendulum_rhs` on ``y = (lam, Lam)`` in the integrator's calling convention."""
    del t
    out = np.empty(2, dtype=y.dtype)
    out[0] = y[1] * -3
    out[1] = -potential_V_prime(y[0])
    return out


def potential_excess(lam: Any) -> Any:
    """``V(lam) + 1/2`` as ``2 sin^2(lam/2) - sin^2(lam/4) / cos(lam/2)``.

    Free of cancellation near the saddle, where it behaves like ``7 lam^2 / 16``.
    """
    _collision_gap(lam)
    arith = arithmetic_of(lam)
    half = arith.sin(lam * 0.5)
    quarter = arith.sin(lam * 0.25)
    return half * half * 2 - quarter * quarter / arith.cos(lam * 0.5)
