"""The separatrix of the averaged pendulum and a dense handle on it.

The separatrix is the orbit through ``(lam0, 0)`` at ``t = 0``. It tends to
the saddle as ``|t| -> oo``, with ``Lam_h < 0`` for ``t < 0`` (unstable half)
and ``Lam_h > 0`` for ``t > 0`` (stable half).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import cache
from typing import TYPE_CHECKING, Self

import numpy as np
from scipy.interpolate import CubicSpline

from coords.exceptions import SeparatrixRangeError
from numerics.exceptions import NumericalError
from numerics.integrator import IntegratorConfig, integrate
from numerics.roots import find_root

from .exceptions import SeparatrixEnergyError
from .potential import (
    LAMBDA_0,
    SADDLE_EIGENVALUE,
    PendulumState,
    hamiltonian_pend,
    pendulum_field,
    potential_excess,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numerics.integrator import VectorField

logger = logging.getLogger(__name__)

SEPARATRIX_CONFIG = IntegratorConfig(rel_tol=1e-13, abs_tol=1e-20)
DEFAULT_SPAN = 20.0
DEFAULT_SAMPLING = 1e-3
TAIL_MATCH = 15.0
SWITCH_TIME = 2.0
ENERGY_PIN = 1e-10


class SeparatrixSide(str, Enum):
    """Half of the separatrix, by the sign of its time."""

    UNSTABLE = "unstable"
    STABLE = "stable"

    @property
    def sign(self: Self) -> float:
        """Sign of the separatrix time on this half."""
        return -1.0 if self is SeparatrixSide.UNSTABLE else 1.0

    def __str__(self: Self) -> str:
        """Return string representation."""
        return self.value


@dataclass(frozen=True)
class SeparatrixSample:
    """One point ``(lam_h(t), Lam_h(t))`` of the separatrix."""

    t: float
    lambda_h: float
    Lambda_h: float

    @property
    def energy(self: SeparatrixSample) -> float:
        """Pendulum energy of the sample; -1/2 on the separatrix."""
        return float(hamiltonian_pend(PendulumState(self.lambda_h, self.Lambda_h)))


def _reduced_field(sign: float) -> VectorField:
    # Energy-reduced flow on the level -1/2; no unstable mode near the saddle.
    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        del t
        out = np.empty(1, dtype=y.dtype)
        out[0] = -sign * math.sqrt(6.0 * max(float(potential_excess(y[0])), 0.0))
        return out

    return rhs


def action_on_level(lam: float, sign: float) -> float:
    """The action with ``H_pend(lam, Lam) = -1/2`` on the half with time sign ``sign``."""
    return sign * math.sqrt(max(2.0 * float(potential_excess(lam)) / 3.0, 0.0))


def separatrix(t: float) -> SeparatrixSample:
    """Integrate the separatrix from the turning point to time t.

    The pendulum field is followed up to ``|t| = SWITCH_TIME``; beyond it the
    angle obeys ``lam' = -sign(t) sqrt(6 (V + 1/2))`` and the action is read
    off the energy level.
    """
    if t == 0.0:
        return SeparatrixSample(0.0, LAMBDA_0, 0.0)
    sign = math.copysign(1.0, t)
    near = integrate(pendulum_field, 0.0, sign * min(abs(t), SWITCH_TIME), np.array([LAMBDA_0, 0.0]), SEPARATRIX_CONFIG)
    if abs(t) <= SWITCH_TIME:
        return SeparatrixSample(t, float(near.y[0]), float(near.y[1]))
    far = integrate(_reduced_field(sign), sign * SWITCH_TIME, t, near.y[:1], SEPARATRIX_CONFIG)
    lam = float(far.y[0])
    return SeparatrixSample(t, lam, action_on_level(lam, sign))


class SeparatrixHandle:
    """Cubic-spline table of the separatrix with exponential saddle tails.

    Within ``|u| <= TAIL_MATCH`` both components come from splines through
    the integrated table; beyond it ``lam_h = c exp(-nu |u|)`` with c matched
    at ``|u| = TAIL_MATCH`` and ``Lam_h = sign(u) nu lam_h / 3``.
    """

    def __init__(self: SeparatrixHandle, times: np.ndarray, table: np.ndarray) -> None:
        """Fit the splines and the tails to a table of ``(lam_h, Lam_h)`` rows."""
        self.times = times
        self.table = table
        self.span = float(times[-1])
        self.nu = SADDLE_EIGENVALUE
        self._lam = CubicSpline(times, table[:, 0])
        self._action = CubicSpline(times, table[:, 1])
        self.tail_coefficient = {
            side: float(self._lam(side.sign * TAIL_MATCH)) * math.exp(self.nu * TAIL_MATCH) for side in SeparatrixSide
        }
        self.tail_floor = {side: float(self._lam(side.sign * TAIL_MATCH)) for side in SeparatrixSide}

    def _side_of(self: SeparatrixHandle, u: float) -> SeparatrixSide:
        return SeparatrixSide.UNSTABLE if u < 0 else SeparatrixSide.STABLE

    def lambda_h(self: SeparatrixHandle, u: float) -> float:
        """Angle along the separatrix."""
        if abs(u) <= TAIL_MATCH:
            return float(self._lam(u))
        return self.tail_coefficient[self._side_of(u)] * math.exp(-self.nu * abs(u))

    def Lambda_h(self: SeparatrixHandle, u: float) -> float:  # noqa: N802
        """Action along the separatrix."""
        if abs(u) <= TAIL_MATCH:
            return float(self._action(u))
        return math.copysign(self.nu / 3.0, u) * self.lambda_h(u)

    def sample(self: SeparatrixHandle, u: float) -> SeparatrixSample:
        """Both components at time u."""
        return SeparatrixSample(u, self.lambda_h(u), self.Lambda_h(u))

    def samples(self: SeparatrixHandle, times: Sequence[float]) -> list[SeparatrixSample]:
        """Samples at several times."""
        return [self.sample(float(t)) for t in times]

    def invert(self: SeparatrixHandle, lam: float, side: Enum) -> float:
        """Separatrix time on ``side`` at which ``lam_h`` equals lam.

        ``lam_h`` decreases monotonically from ``lam0`` to 0 on each half, so
        the inverse is unique. Angles below the tail floor are inverted on
        the exponential tail.
        """
        side = SeparatrixSide(side)
        if not 0.0 < lam <= LAMBDA_0:
            msg = f"lam={lam!r} is outside the separatrix range (0, {LAMBDA_0!r}]"
            raise SeparatrixRangeError(msg)
        if lam == LAMBDA_0:
            return 0.0
        if lam <= self.tail_floor[side]:
            return side.sign * math.log(self.tail_coefficient[side] / lam) / self.nu

        def gap(u: float) -> float:
            return self.lambda_h(side.sign * u) - lam

        try:
            u = float(find_root(gap, bracket=(0.0, TAIL_MATCH), tol=1e-15))
        except NumericalError as e:
            msg = f"could not invert the separatrix at lam={lam!r}: {e}"
            raise SeparatrixRangeError(msg) from e
        return side.sign * u

    def max_energy_error(self: SeparatrixHandle) -> float:
        """Largest ``|H_pend + 1/2|`` over the table."""
        lam, action = self.table[:, 0], self.table[:, 1]
        excess = 2.0 * np.sin(0.5 * lam) ** 2 - np.sin(0.25 * lam) ** 2 / np.cos(0.5 * lam)
        return float(np.max(np.abs(excess - 1.5 * action * action)))


def _half_table(sign: float, span: float, sampling: float) -> tuple[np.ndarray, np.ndarray]:
    cfg = SEPARATRIX_CONFIG.with_overrides(dense_output=True)
    near = integrate(pendulum_field, 0.0, sign * SWITCH_TIME, np.array([LAMBDA_0, 0.0]), cfg)
    far = integrate(_reduced_field(sign), sign * SWITCH_TIME, sign * span, near.y[:1], cfg)
    n = round(span / sampling)
    times = sign * sampling * np.arange(n + 1)
    times[-1] = sign * span
    inner = np.abs(times) <= SWITCH_TIME
    table = np.empty((times.size, 2))
    table[inner] = near.trajectory.sample(times[inner])  # type: ignore[union-attr]
    outer_lam = far.trajectory.sample(times[~inner])[:, 0]  # type: ignore[union-attr]
    table[~inner, 0] = outer_lam
    table[~inner, 1] = [action_on_level(lam, sign) for lam in outer_lam]
    return times, table


@cache
def separatrix_handle(span: float = DEFAULT_SPAN, sampling: float = DEFAULT_SAMPLING) -> SeparatrixHandle:
    """Tabulate the separatrix on ``[-span, span]`` and wrap it in a handle.

    Both halves are integrated from the turning point. The table must keep
    the pendulum energy pinned at -1/2.
    """
    if span <= TAIL_MATCH or sampling <= 0.0:
        msg = f"span must exceed {TAIL_MATCH} and sampling must be positive, got {span}, {sampling}"
        raise SeparatrixRangeError(msg)
    back_t, back_y = _half_table(-1.0, span, sampling)
    fwd_t, fwd_y = _half_table(1.0, span, sampling)
    times = np.concatenate([back_t[:0:-1], fwd_t])
    table = np.vstack([back_y[:0:-1], fwd_y])
    handle = SeparatrixHandle(times, table)
    drift = handle.max_energy_error()
    if drift > ENERGY_PIN:
        msg = f"separatrix table drifted off the energy level by {drift:.3e}"
        raise SeparatrixEnergyError(msg)
    logger.info("separatrix handle built", extra={"span": span, "sampling": sampling, "energy_drift": drift})
    return handle
