"""Separatrix coordinates ``lam = lam_h(u)``, ``Lam = Lam_h(u) - w / (3 Lam_h(u))``."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any, Protocol

from .exceptions import SeparatrixFloorError
from .states import ScaledState, SeparatrixCoordState

if TYPE_CHECKING:
    from enum import Enum

DEFAULT_U_FLOOR = 1e-3


class SeparatrixLike(Protocol):
    """What the chart needs from a separatrix parametrization."""

    def lambda_h(self, u: float) -> float:
        """Angle along the separatrix at time u."""
        ...

    def Lambda_h(self, u: float) -> float:  # noqa: N802
        """Action along the separatrix at time u."""
        ...

    def invert(self, lam: float, side: Enum) -> float:
        """Time at which the chosen half reaches angle lam."""
        ...


def to_separatrix_coords(
    ss: ScaledState,
    handle: SeparatrixLike,
    side: Enum,
    u_floor: float = DEFAULT_U_FLOOR,
) -> SeparatrixCoordState:
    """Express an equilibrium-shifted scaled state in separatrix coordinates.

    ``u`` inverts ``lam_h`` on the requested half of the separatrix and
    ``w = 3 Lam_h(u) (Lam_h(u) - Lam)``; x and y pass through unchanged.
    """
    u = handle.invert(float(ss.lam), side)
    if abs(u) < u_floor:
        msg = f"separatrix time |u|={abs(u):.3g} is below the floor {u_floor:g}"
        raise SeparatrixFloorError(msg)
    lam_h = handle.Lambda_h(u)
    w = 3.0 * lam_h * (lam_h - float(ss.Lam))
    return SeparatrixCoordState(u, w, ss.x, ss.y)


def from_separatrix_coords(sc: SeparatrixCoordState, handle: SeparatrixLike, delta: Any) -> ScaledState:
    """Inverse of :func:`to_separatrix_coords`."""
    if abs(sc.u) == 0.0:
        msg = "separatrix coordinates are undefined at u = 0"
        raise SeparatrixFloorError(msg)
    lam_h = handle.Lambda_h(sc.u)
    return ScaledState(handle.lambda_h(sc.u), lam_h - sc.w / (3.0 * lam_h), sc.x, sc.y, delta)
