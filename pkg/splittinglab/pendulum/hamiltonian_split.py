"""The scaled Hamiltonian and its split ``H = H_pend + H_osc + H_1``.

In scaled variables with time ``tau = delta^2 t`` the energy reads
``H = (h + 3/2) / mu``. Its pieces are

    H_pend = -3/2 Lam^2 + V(lam)
    H_osc  = x y / delta^2
    H_1    = H_1^Poi(lam, 1 + delta^2 Lam, delta x, delta y) - V(lam) + F_pend(delta^2 Lam) / delta^4

with ``H_1^Poi = (h - H_0^Poi) / mu`` evaluated through the exact coordinate
transforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from coords.poincare import h0_poincare, poincare_to_cart
from coords.scaling import unscale
from rpc3bp.hamiltonian import hamiltonian_h

from .potential import potential_V

if TYPE_CHECKING:
    from coords.states import ScaledState
    from rpc3bp.params import MuParam


@dataclass(frozen=True)
class HamiltonianSplit:
    """The three pieces of the scaled Hamiltonian and the full value."""

    pend: Any
    osc: Any
    perturbation: Any
    total: Any

    @property
    def residual(self: HamiltonianSplit) -> float:
        """``H - H_pend - H_osc - H_1``; zero up to rounding."""
        return float(self.total - self.pend - self.osc - self.perturbation)


def f_pend(z: Any) -> Any:
    """Cubic remainder ``-1/(2(1+z)^2) - (1+z) + 3/2 + 3/2 z^2 = z^3 (4 + 3z) / (2 (1+z)^2)``."""
    one_plus = z + 1
    return z * z * z * (z * 3 + 4) / (one_plus * one_plus * 2)


def h_pend_scaled(ss: ScaledState) -> Any:
    """Pendulum part ``-3/2 Lam^2 + V(lam)``."""
    return ss.Lam * ss.Lam * -1.5 + potential_V(ss.lam)


def h_osc(ss: ScaledState) -> Any:
    """Oscillator part ``x y / delta^2``."""
    return (ss.x * ss.y).real / (ss.delta * ss.delta)


def _h1_poincare(ss: ScaledState, m: MuParam) -> tuple[Any, Any]:
    ps = unscale(ss)
    h = hamiltonian_h(poincare_to_cart(ps), m)
    return h, (h - h0_poincare(ps)) / m.mu


def h1_eval(ss: ScaledState, m: MuParam) -> Any:
    """The perturbation ``H_1`` at a scaled state."""
    _, h1_poi = _h1_poincare(ss, m)
    d2 = ss.delta * ss.delta
    return h1_poi - potential_V(ss.lam) + f_pend(ss.Lam * d2) / (d2 * d2)


def scaled_hamiltonian(ss: ScaledState, m: MuParam) -> Any:
    """The full scaled Hamiltonian ``(h + 3/2) / mu``."""
    ps = unscale(ss)
    return (hamiltonian_h(poincare_to_cart(ps), m) + 1.5) / m.mu


def split_hamiltonian(ss: ScaledState, m: MuParam) -> HamiltonianSplit:
    """Evaluate every piece at once, sharing the pass through the coordinate tower."""
    h, h1_poi = _h1_poincare(ss, m)
    d2 = ss.delta * ss.delta
    pend = h_pend_scaled(ss)
    perturbation = h1_poi - potential_V(ss.lam) + f_pend(ss.Lam * d2) / (d2 * d2)
    return HamiltonianSplit(pend, h_osc(ss), perturbation, (h + 1.5) / m.mu)
