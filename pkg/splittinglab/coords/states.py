"""Phase-space points of the coordinate tower."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from numerics.precision import arithmetic_of


def wrap_angle(angle: Any) -> Any:
    """Map an angle into (-pi, pi], keeping double-words as double-words."""
    arith = arithmetic_of(angle)
    turns = math.floor(float(angle) / (2.0 * math.pi) + 0.5)
    wrapped = angle - arith.pi * (2 * turns) if turns else angle
    if float(wrapped) <= -math.pi:
        wrapped = wrapped + arith.pi * 2
    elif float(wrapped) > math.pi:
        wrapped = wrapped - arith.pi * 2
    return wrapped


@dataclass(frozen=True)
class PolarState:
    """Symplectic polar coordinates ``(r, theta, R, G)``."""

    r: Any
    theta: Any
    R: Any
    G: Any

    def to_binary64(self: PolarState) -> tuple[float, float, float, float]:
        """Round every component to binary64."""
        return (float(self.r), float(self.theta), float(self.R), float(self.G))


@dataclass(frozen=True)
class PoincareState:
    """Rotating Poincare elements ``(lam, L, eta, xi)``.

    The real slice has ``xi = conj(eta)``; the symplectic form is
    ``dlam ^ dL + i deta ^ dxi``.
    """

    lam: Any
    L: Any
    eta: Any
    xi: Any


@dataclass(frozen=True)
class ScaledState:
    """Scaled variables with ``L = 1 + delta^2 Lam``, ``eta = delta x``, ``xi = delta y``."""

    lam: Any
    Lam: Any
    x: Any
    y: Any
    delta: Any

    @property
    def time_factor(self: ScaledState) -> Any:
        """Factor ``delta^2`` relating scaled time to physical time, ``tau = delta^2 t``."""
        return self.delta * self.delta


@dataclass(frozen=True)
class SeparatrixCoordState:
    """Separatrix coordinates: time ``u`` along the separatrix and deviations ``(w, x, y)``."""

    u: Any
    w: Any
    x: Any
    y: Any
