"""Unstable and stable inner solutions integrated along horizontal complex paths."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Any

import numpy as np

from numerics.integrator import IntegratorConfig, integrate
from numerics.precision import Precision

from .exceptions import DecayBoundError, InnerDomainError
from .hamiltonian import InnerKind, InnerState, PowerBranch, cube_root, inner_rhs
from .seeding import MAX_SEED_ITERATES, InnerSeed, picard_seed

if TYPE_CHECKING:
    from numerics.integrator import DenseTrajectory, VectorField

logger = logging.getLogger(__name__)

MIN_RHO = 5.0
MIN_RE_START = 30.0
# Weighted bound on |U^(8/3) W|, |U^(4/3) X| and |U^(4/3) Y| along a path.
DECAY_BOUND = 25.0
DECAY_SAMPLES = 20
PLUG_BACK_STEP = 5e-3


def _default_integrator() -> IntegratorConfig:
    return IntegratorConfig(rel_tol=1e-12, abs_tol=1e-16, dense_output=True)


@dataclass(frozen=True)
class InnerPath:
    """The horizontal path ``U = s + i im_level`` run from ``s = re_start`` to ``s = re_end``.

    Paths of the ``UPPER`` branch sit at ``Im U = -rho``, those of the
    conjugate ``LOWER`` branch at ``Im U = +rho``.
    """

    rho: float
    re_start: float
    re_end: float
    branch: PowerBranch = PowerBranch.UPPER
    integrator: IntegratorConfig = field(default_factory=_default_integrator)

    def __post_init__(self: InnerPath) -> None:
        """Keep the path away from the singularity and start it far out."""
        if not self.rho >= MIN_RHO:
            msg = f"rho must be at least {MIN_RHO:g}, got {self.rho!r}"
            raise InnerDomainError(msg)
        if not abs(self.re_start) >= MIN_RE_START:
            msg = f"|re_start| must be at least {MIN_RE_START:g}, got {self.re_start!r}"
            raise InnerDomainError(msg)
        if self.re_start == self.re_end:
            msg = "the path must have positive length"
            raise InnerDomainError(msg)

    @classmethod
    def toward(
        cls: type[InnerPath],
        kind: InnerKind,
        rho: float,
        re_max: float,
        overlap: float,
        branch: PowerBranch = PowerBranch.UPPER,
        integrator: IntegratorConfig | None = None,
    ) -> InnerPath:
        """Path of a ``kind`` solution from ``|Re U| = re_max`` across ``|Re U| <= overlap``."""
        side = kind.side
        return cls(
            rho=rho,
            re_start=-side * re_max,
            re_end=side * overlap,
            branch=branch,
            integrator=integrator or _default_integrator(),
        )

    @property
    def im_level(self: InnerPath) -> float:
        """``Im U`` along the path."""
        return self.branch.path_sign * self.rho

    @property
    def precision(self: InnerPath) -> Precision:
        """Working precision of the integration."""
        return self.integrator.precision

    def point(self: InnerPath, s: float) -> complex:
        """``U`` at path parameter ``s``."""
        return complex(s, self.im_level)

    def with_precision(self: InnerPath, precision: Precision) -> InnerPath:
        """Copy of the path integrated in another precision."""
        return replace(self, integrator=self.integrator.with_overrides(precision=precision))


def path_field(path: InnerPath) -> VectorField:
    """``dZ/ds`` along the path; ``dU/ds = 1``."""
    arith = path.integrator.arithmetic
    level = path.im_level

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        state = InnerState(arith.complex_scalar(t, level), y[0], y[1], y[2])
        return arith.vector(inner_rhs(state, path.branch))

    return rhs


@dataclass(frozen=True)
class InnerSolution:
    """Dense solution ``Z(s)`` of one kind along one path."""

    kind: InnerKind
    path: InnerPath
    seed: InnerSeed
    trajectory: DenseTrajectory
    n_steps: int
    max_weighted: float

    def state_at(self: InnerSolution, s: float) -> InnerState:
        """Inner state at path parameter ``s`` in the working precision."""
        arith = self.path.integrator.arithmetic
        y = self.trajectory(s)
        return InnerState(arith.complex_scalar(s, self.path.im_level), y[0], y[1], y[2])

    def samples(self: InnerSolution, n: int = DECAY_SAMPLES) -> list[InnerState]:
        """Binary64 states at ``n`` equally spaced path parameters."""
        lo, hi = self.trajectory.t_min, self.trajectory.t_max
        return [self.state_at(float(s)).to_complex() for s in np.linspace(lo, hi, n)]


def weighted_norm(s: InnerState, branch: PowerBranch = PowerBranch.UPPER) -> float:
    """``max(|U^(8/3) W|, |U^(4/3) X|, |U^(4/3) Y|)`` in binary64."""
    c = s.to_complex()
    p43 = cube_root(c.U, branch) ** 4
    return max(abs(p43 * p43 * c.W), abs(p43 * c.X), abs(p43 * c.Y))


def _check_decay(states: list[InnerState], branch: PowerBranch) -> float:
    largest = 0.0
    for s in states:
        value = weighted_norm(s, branch)
        if not value <= DECAY_BOUND:
            msg = f"weighted size {value:.3e} at U={s.U!r} exceeds the decay bound {DECAY_BOUND:g}"
            raise DecayBoundError(msg)
        largest = max(largest, value)
    return largest


def _check_direction(kind: InnerKind, path: InnerPath) -> None:
    start_side = -1.0 if path.re_start < 0 else 1.0
    if start_side != -kind.side or (path.re_end - path.re_start) * kind.side <= 0:
        msg = f"a {kind} solution starts at Re U = {-kind.side * abs(path.re_start):g} and runs toward the overlap"
        raise InnerDomainError(msg)


def solve_branch(
    kind: InnerKind,
    path: InnerPath,
    seed_iterates: int = MAX_SEED_ITERATES,
) -> InnerSolution:
    """Seed the ``kind`` solution at the start of the path and integrate along it.

    The weighted decay bounds are checked at ``DECAY_SAMPLES`` points of the
    returned trajectory.
    """
    _check_direction(kind, path)
    seed = picard_seed(kind, path.point(path.re_start), path.branch, seed_iterates)
    cfg = path.integrator.with_overrides(dense_output=True)
    y0 = cfg.arithmetic.vector(seed.Z)
    result = integrate(path_field(path), path.re_start, path.re_end, y0, cfg)
    if result.trajectory is None:  # pragma: no cover
        msg = "integration returned no dense trajectory"
        raise DecayBoundError(msg)

    solution = InnerSolution(kind, path, seed, result.trajectory, result.n_steps, 0.0)
    largest = _check_decay(solution.samples(), path.branch)
    logger.info(
        "inner solution",
        extra={
            "kind": str(kind),
            "rho": path.rho,
            "branch": str(path.branch),
            "precision": str(path.precision),
            "steps": result.n_steps,
            "max_weighted": largest,
        },
    )
    return replace(solution, max_weighted=largest)


def _binary64(values: Any) -> np.ndarray:
    return np.array([complex(v) for v in values], dtype=np.complex128)


def plug_back_residual(solution: InnerSolution, n: int = DECAY_SAMPLES) -> float:
    """Largest ``|Z'(s) - F(U, Z)| / |F(U, Z)|`` at ``n`` interior samples.

    ``Z'`` is the five-point derivative of the dense interpolant.
    """
    trajectory = solution.trajectory
    margin = 4 * PLUG_BACK_STEP
    residual = 0.0
    for s in np.linspace(trajectory.t_min + margin, trajectory.t_max - margin, n):
        state = solution.state_at(float(s))
        field_value = _binary64(inner_rhs(state, solution.path.branch))
        slope = _binary64(trajectory.derivative(float(s), PLUG_BACK_STEP))
        residual = max(residual, float(np.linalg.norm(slope - field_value) / np.linalg.norm(field_value)))
    logger.debug("plug-back residual", extra={"kind": str(solution.kind), "rho": solution.path.rho, "residual": residual})
    return residual
