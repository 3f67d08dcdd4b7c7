"""Invariance residual of a computed manifold written as a graph over the separatrix."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from coords.poincare import cart_to_poincare
from coords.scaling import L3Shift, equi_shift, equi_unshift, l3_shift, scale
from coords.separatrix_coords import from_separatrix_coords, to_separatrix_coords
from coords.states import SeparatrixCoordState
from numerics.exceptions import ParameterError
from pendulum.hamiltonian_split import scaled_hamiltonian
from pendulum.separatrix import SeparatrixHandle, SeparatrixSide, separatrix_handle
from rpc3bp.states import CartesianState

from .branches import ManifoldBranch, ManifoldKind
from .config import Section, SectionKind, SplittingConfig
from .exceptions import GraphFoldError
from .sections import track_to_section

if TYPE_CHECKING:
    from collections.abc import Callable

    from coords.states import ScaledState
    from numerics.integrator import DenseTrajectory

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = (0.5, 1.5)
MIN_GRAPH_POINTS = 5
GRAPH_SAMPLES = 4000
TIME_STEP = 1e-2
HAMILTONIAN_STEP = 1e-3
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class InvarianceResult:
    """Residual of ``z'(u) = X(u, z)`` with ``z = (w, X, Y)`` along one branch.

    ``X`` and ``Y`` are the real coordinates ``x = (X + iY) / sqrt(2)`` of the
    oscillator pair.
    """

    mu: float
    kind: ManifoldKind
    window: tuple[float, float]
    residual: float
    max_abs_w: float
    n_points: int
    u_values: tuple[float, ...]


def _shifted(state: np.ndarray, delta: float, shift: L3Shift) -> ScaledState:
    return equi_shift(scale(cart_to_poincare(CartesianState.from_vector(state)), delta), shift)


def _outer_point(ss: ScaledState, handle: SeparatrixHandle, side: SeparatrixSide) -> np.ndarray:
    sc = to_separatrix_coords(ss, handle, side)
    x = complex(sc.x)
    return np.array([float(sc.u), float(sc.w), SQRT2 * x.real, SQRT2 * x.imag])


def _outer_hamiltonian(branch: ManifoldBranch, shift: L3Shift, handle: SeparatrixHandle) -> Callable[[np.ndarray], float]:
    delta = branch.mu.delta
    m = branch.mu

    def h_out(z: np.ndarray) -> float:
        x = complex(z[2], z[3]) / SQRT2
        sc = SeparatrixCoordState(float(z[0]), float(z[1]), x, x.conjugate())
        return float(scaled_hamiltonian(equi_unshift(from_separatrix_coords(sc, handle, delta), shift), m))

    return h_out


def _gradient(f: Callable[[np.ndarray], float], z: np.ndarray, step: float) -> np.ndarray:
    grad = np.empty_like(z)
    for i in range(z.size):
        e = np.zeros_like(z)
        e[i] = step
        grad[i] = (f(z - 2 * e) - 8.0 * f(z - e) + 8.0 * f(z + e) - f(z + 2 * e)) / (12.0 * step)
    return grad


def _time_derivative(g: Callable[[float], np.ndarray], t: float, step: float) -> np.ndarray:
    return (g(t - 2 * step) - 8.0 * g(t - step) + 8.0 * g(t + step) - g(t + 2 * step)) / (12.0 * step)


def _first_leg(trajectory: DenseTrajectory, kind: ManifoldKind) -> np.ndarray:
    """Sample times from the seed up to the turning point, the largest mean longitude."""
    times = np.linspace(trajectory.t_min, trajectory.t_max, GRAPH_SAMPLES)
    if kind is ManifoldKind.STABLE:
        times = times[::-1]
    lam = np.array([float(cart_to_poincare(CartesianState.from_vector(row)).lam) for row in trajectory.sample(times)])
    return times[: int(np.argmax(lam)) + 1]


def invariance_residual(
    branch: ManifoldBranch,
    window: tuple[float, float] = DEFAULT_WINDOW,
    cfg: SplittingConfig | None = None,
    handle: SeparatrixHandle | None = None,
) -> InvarianceResult:
    """Check that the computed branch solves the invariance system on a window of ``|u|``.

    The branch is sampled on its first leg, mapped through the Poincare,
    scaling, equilibrium and separatrix charts, and written as a graph
    ``z(u)``. Its slope is compared with the vector field of the outer
    Hamiltonian ``H o phi_equi o phi_out``.
    """
    lo, hi = window
    if not 0.0 < lo < hi:
        msg = f"window must satisfy 0 < u_min < u_max, got {window!r}"
        raise ParameterError(msg)
    cfg = cfg or SplittingConfig(precision=branch.precision)
    handle = handle or separatrix_handle()
    side = SeparatrixSide.UNSTABLE if branch.kind is ManifoldKind.UNSTABLE else SeparatrixSide.STABLE
    shift = l3_shift(branch.mu, branch.precision)
    delta = branch.mu.delta

    crossing = track_to_section(branch, Section(SectionKind.THETA, math.pi / 2), cfg, dense_output=True)
    trajectory = crossing.trajectory
    if trajectory is None:  # pragma: no cover
        msg = "the tracked branch carries no dense trajectory"
        raise GraphFoldError(msg)

    def graph(t: float) -> np.ndarray:
        return _outer_point(_shifted(trajectory(t), delta, shift), handle, side)

    # lam_h is monotone on each half, so the u window is a lam window.
    lam_lo, lam_hi = handle.lambda_h(side.sign * hi), handle.lambda_h(side.sign * lo)
    points = []
    for t in _first_leg(trajectory, branch.kind):
        lam = float(_shifted(trajectory(float(t)), delta, shift).lam)
        if lam_lo <= lam <= lam_hi:
            points.append((float(t), graph(float(t))))
    if len(points) < MIN_GRAPH_POINTS:
        msg = f"only {len(points)} samples of the branch fall in |u| in [{lo}, {hi}]"
        raise GraphFoldError(msg)
    us = np.array([z[0] for _, z in points])
    steps = np.diff(us)
    if not (np.all(steps > 0) or np.all(steps < 0)):
        msg = "the branch folds over the separatrix time on the window"
        raise GraphFoldError(msg)

    h_out = _outer_hamiltonian(branch, shift, handle)
    residual = 0.0
    for t, z in points:
        dz = _time_derivative(graph, t, TIME_STEP)
        slope = dz[1:] / dz[0]
        dh = _gradient(h_out, z, HAMILTONIAN_STEP)
        field = np.array([-dh[0], dh[3], -dh[2]]) / dh[1]
        residual = max(residual, float(np.max(np.abs(slope - field))))

    max_w = float(max(abs(z[1]) for _, z in points))
    logger.info(
        "invariance residual",
        extra={"mu": branch.mu.mu, "kind": str(branch.kind), "residual": residual, "max_abs_w": max_w, "points": len(points)},
    )
    return InvarianceResult(
        mu=branch.mu.mu,
        kind=branch.kind,
        window=window,
        residual=residual,
        max_abs_w=max_w,
        n_points=len(points),
        u_values=tuple(float(u) for u in us),
    )
