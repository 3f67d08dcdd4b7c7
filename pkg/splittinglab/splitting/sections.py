"""First crossings of a manifold branch with a section."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np

from coords.poincare import cart_to_poincare
from coords.polar import cart_to_polar
from coords.scaling import scale
from coords.states import wrap_angle
from numerics.exceptions import EventNotFoundError
from numerics.integrator import Direction, EventSpec, integrate_to_event
from numerics.precision import arithmetic_of
from rpc3bp.hamiltonian import cartesian_rhs
from rpc3bp.states import CartesianState

from .config import Section, SectionKind, SplittingConfig
from .exceptions import PrimaryApproachError, SectionCrossingError

if TYPE_CHECKING:
    from coords.states import PolarState, ScaledState
    from numerics.integrator import DenseTrajectory

    from .branches import ManifoldBranch

logger = logging.getLogger(__name__)

# Largest accepted section residual.
SECTION_TOLERANCE = 1e-9
# The angle event wraps by 2 pi half a turn away from the section.
WRAP_JUMP = math.pi


@dataclass(frozen=True)
class SectionCrossing:
    """State of a branch where it meets a section.

    ``time_of_flight`` is signed: negative for stable branches, which are
    followed backward in time.
    """

    section: Section
    state: CartesianState
    polar: PolarState
    scaled: ScaledState | None
    crossing_index: int
    time_of_flight: float
    section_residual: float
    trajectory: DenseTrajectory | None = None


def section_angle(kind: SectionKind, state: CartesianState) -> Any:
    """The angle a section is defined by: polar theta or mean longitude lam."""
    if kind is SectionKind.THETA:
        arith = arithmetic_of(state.q1, state.q2)
        return arith.atan2(state.q2, state.q1)
    return cart_to_poincare(state).lam


def _event_function(section: Section) -> Any:
    def g(t: float, y: np.ndarray) -> float:
        del t
        angle = section_angle(section.kind, CartesianState.from_vector(y))
        return float(wrap_angle(angle - section.value))

    return g


def _primary_monitor(branch: ManifoldBranch, limit: float) -> Any:
    mu = branch.mu.mu
    centres = ((mu, "larger"), (mu - 1.0, "smaller"))

    def monitor(t: float, y: np.ndarray) -> None:
        q1, q2 = float(y[0]), float(y[1])
        for centre, name in centres:
            distance = math.hypot(q1 - centre, q2)
            if distance < limit:
                msg = f"{branch.kind} {branch.sign} branch came within {distance:.3e} of the {name} primary at t={t:.6g}"
                raise PrimaryApproachError(msg)

    return monitor


def track_to_section(
    branch: ManifoldBranch,
    section: Section,
    cfg: SplittingConfig | None = None,
    *,
    horizon: float | None = None,
    dense_output: bool = False,
) -> SectionCrossing:
    """Follow a branch to its first crossing with the section.

    Unstable branches run forward and stable ones backward. The admissible
    crossing is the one with the angle decreasing in forward time: the
    returning leg of the unstable branch, the approach of the stable branch.
    """
    cfg = cfg or SplittingConfig(precision=branch.precision)
    budget = horizon if horizon is not None else cfg.horizon(branch.mu.mu)
    event = EventSpec(
        event_function=_event_function(section),
        direction=Direction.DECREASING,
        root_tol=cfg.root_tol,
        horizon=branch.kind.time_sign * budget,
        monitor=_primary_monitor(branch, cfg.min_primary_distance),
        max_jump=WRAP_JUMP,
    )
    integrator = cfg.integrator.with_overrides(precision=branch.precision, dense_output=dense_output)
    try:
        result = integrate_to_event(cartesian_rhs(branch.mu), 0.0, branch.seed_state.as_vector(branch.precision), event, integrator)
    except EventNotFoundError as e:
        msg = f"{branch.kind} {branch.sign} branch at mu={branch.mu.mu!r} did not reach the {section.kind} section: {e}"
        raise EventNotFoundError(msg) from e

    state = CartesianState.from_vector(result.y)
    residual = abs(float(wrap_angle(section_angle(section.kind, state) - section.value)))
    if residual > SECTION_TOLERANCE:
        msg = f"located crossing misses the section by {residual:.3e}"
        raise SectionCrossingError(msg)

    polar = cart_to_polar(state)
    scaled = None
    if section.kind is SectionKind.LAMBDA:
        arith = arithmetic_of(*state.components)
        scaled = scale(cart_to_poincare(state), branch.mu.delta_in(arith))
    logger.debug(
        "section crossing located",
        extra={"kind": str(branch.kind), "section": str(section.kind), "tof": result.t, "steps": result.n_steps},
    )
    return SectionCrossing(
        section=section,
        state=state,
        polar=polar,
        scaled=scaled,
        crossing_index=result.crossings,
        time_of_flight=result.t,
        section_residual=residual,
        trajectory=result.trajectory,
    )


def arclength_time(branch: ManifoldBranch, cfg: SplittingConfig | None = None) -> float:
    """Signed time the branch takes to get ``cfg.arclength`` away from L3.

    Near L3 the branch is straight up to second order, so its arclength is
    the phase-space distance to L3.
    """
    cfg = cfg or SplittingConfig(precision=branch.precision)
    centre = np.array(branch.l3.state.to_binary64())

    def g(t: float, y: np.ndarray) -> float:
        del t
        return float(np.linalg.norm(np.array([float(c) for c in y]) - centre)) - cfg.arclength

    event = EventSpec(
        event_function=g,
        root_tol=cfg.root_tol,
        horizon=branch.kind.time_sign * cfg.horizon(branch.mu.mu),
    )
    integrator = cfg.integrator.with_overrides(precision=branch.precision)
    result = integrate_to_event(cartesian_rhs(branch.mu), 0.0, branch.seed_state.as_vector(branch.precision), event, integrator)
    return result.t
