"""Singular scaling around the circular orbit and the shift to L3."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from numerics.exceptions import ParameterError
from numerics.precision import Precision, get_arithmetic
from rpc3bp.lagrange import lagrange_points

from .exceptions import L3ShiftUnavailableError
from .poincare import cart_to_poincare
from .states import PoincareState, ScaledState

if TYPE_CHECKING:
    from rpc3bp.params import MuParam

logger = logging.getLogger(__name__)


def scale(ps: PoincareState, delta: Any) -> ScaledState:
    """Apply ``L = 1 + delta^2 Lam``, ``eta = delta x``, ``xi = delta y``."""
    if float(delta) <= 0.0:
        msg = f"delta must be positive, got {float(delta)!r}"
        raise ParameterError(msg)
    d2 = delta * delta
    return ScaledState(ps.lam, (ps.L - 1) / d2, ps.eta / delta, ps.xi / delta, delta)


def unscale(ss: ScaledState) -> PoincareState:
    """Inverse of :func:`scale`."""
    d = ss.delta
    return PoincareState(ss.lam, ss.Lam * (d * d) + 1, ss.x * d, ss.y * d)


@dataclass(frozen=True)
class L3Shift:
    """Scaled coordinates of L3 for one mass ratio.

    ``Lam_hat``, ``x_hat`` and ``y_hat`` are the components divided by
    ``delta^2``, ``delta^3`` and ``delta^3``; they stay bounded as mu -> 0.
    """

    point: ScaledState
    mu: float

    @property
    def Lam_hat(self: L3Shift) -> float:  # noqa: N802
        """Action offset over delta^2."""
        d = float(self.point.delta)
        return float(self.point.Lam) / d**2

    @property
    def x_hat(self: L3Shift) -> complex:
        """x offset over delta^3."""
        return complex(self.point.x) / float(self.point.delta) ** 3

    @property
    def y_hat(self: L3Shift) -> complex:
        """y offset over delta^3."""
        return complex(self.point.y) / float(self.point.delta) ** 3


def l3_shift(m: MuParam, precision: Precision = Precision.NATIVE) -> L3Shift:
    """Locate L3 and push it through the Poincare and scaling maps."""
    arith = get_arithmetic(precision)
    l3 = lagrange_points(m, precision).l3.state
    point = scale(cart_to_poincare(l3), m.delta_in(arith))
    logger.debug("L3 in scaled coordinates", extra={"mu": m.mu, "Lam": float(point.Lam), "x": str(complex(point.x))})
    return L3Shift(point, m.mu)


def equi_shift(ss: ScaledState, shift: L3Shift | None) -> ScaledState:
    """Translate so that L3 sits at the origin."""
    if shift is None:
        msg = "the equilibrium shift needs L3 located at this mass ratio"
        raise L3ShiftUnavailableError(msg)
    o = shift.point
    return ScaledState(ss.lam - o.lam, ss.Lam - o.Lam, ss.x - o.x, ss.y - o.y, ss.delta)


def equi_unshift(ss: ScaledState, shift: L3Shift | None) -> ScaledState:
    """Inverse of :func:`equi_shift`."""
    if shift is None:
        msg = "the equilibrium shift needs L3 located at this mass ratio"
        raise L3ShiftUnavailableError(msg)
    o = shift.point
    return ScaledState(ss.lam + o.lam, ss.Lam + o.Lam, ss.x + o.x, ss.y + o.y, ss.delta)
