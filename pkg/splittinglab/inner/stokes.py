"""Stokes constant of the inner equation from the difference of its two solutions.

On the overlap of the two domains ``Y^u - Y^s = Theta exp(-iU) (1 + O(1/U))``.
Each path height gives one extrapolated estimate; their agreement across
heights is the stability diagnostic.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from numerics.integrator import IntegratorConfig
from numerics.precision import Precision

from .branches import InnerPath, InnerSolution, solve_branch
from .exceptions import DifferenceFloorError, InnerDomainError, StokesSpreadError
from .hamiltonian import InnerKind, PowerBranch
from .seeding import MAX_SEED_ITERATES

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

EVAL_POINTS = (-2.0, -1.0, 0.0, 1.0, 2.0)
DEFAULT_RHOS = (8.0, 12.0, 16.0)
DEFAULT_RE_MAX = 60.0
SPREAD_THRESHOLD = 0.01
# Heights from which binary64 cannot carry exp(-rho) on top of O(1) solutions.
COMPENSATED_RHO = 12.0
# The difference must exceed this many units in the last place of the solutions.
FLOOR_FACTOR = 100.0
OVERLAP_MARGIN = 1.0


@dataclass(frozen=True)
class ThetaSample:
    """``theta(U) = Delta(U) exp(+-iU)`` at one point of the overlap."""

    rho: float
    re_u: float
    theta: complex
    delta_w: float
    delta_main: float


@dataclass(frozen=True)
class RhoEstimate:
    """Estimate of Theta at one path height.

    ``theta`` is the constant term of the fit ``theta(U) = Theta + b / U``
    and ``correction`` is b.
    """

    rho: float
    theta: complex
    correction: complex
    samples: tuple[ThetaSample, ...]
    w_ratio: float
    precision: Precision


@dataclass(frozen=True)
class StokesEstimate:
    """Stokes constant averaged over path heights.

    On the ``LOWER`` branch the pipeline runs on the conjugate problem and
    ``theta`` estimates the complex conjugate of the constant.
    """

    theta: complex
    abs_theta: float
    per_rho: tuple[RhoEstimate, ...]
    spread: float
    threshold: float
    branch: PowerBranch

    @property
    def valid(self: StokesEstimate) -> bool:
        """Whether the heights agree within the threshold."""
        return self.spread <= self.threshold

    @property
    def samples(self: StokesEstimate) -> list[ThetaSample]:
        """Every theta sample, height by height."""
        return [s for e in self.per_rho for s in e.samples]


def extract_rho(zu: InnerSolution, zs: InnerSolution, eval_points: Sequence[float] = EVAL_POINTS) -> RhoEstimate:
    """Fit ``theta(U) = Theta + b / U`` to the differences at ``eval_points``."""
    path = zu.path
    if zs.path.rho != path.rho or zs.path.branch is not path.branch:
        msg = "both solutions must run along the same path"
        raise InnerDomainError(msg)
    if len(eval_points) < 2:
        msg = "at least two evaluation points are needed"
        raise InnerDomainError(msg)
    arith = path.integrator.arithmetic
    upper = path.branch is PowerBranch.UPPER
    # exp(iU) on the UPPER branch, exp(-iU) on its conjugate.
    rotation = 1j if upper else -1j

    samples = []
    for s in eval_points:
        u_state, s_state = zu.state_at(float(s)), zs.state_at(float(s))
        main_u, main_s = (u_state.Y, s_state.Y) if upper else (u_state.X, s_state.X)
        delta = main_u - main_s
        if arith.magnitude(delta) < FLOOR_FACTOR * arith.epsilon * arith.magnitude(main_u):
            msg = (
                f"|Delta| = {arith.magnitude(delta):.3e} at rho={path.rho:g}, Re U={s:g} is lost in "
                f"{path.precision} rounding; lower rho or use compensated precision"
            )
            raise DifferenceFloorError(msg)
        theta = complex(delta * arith.exp(u_state.U * rotation))
        samples.append(
            ThetaSample(
                rho=path.rho,
                re_u=float(s),
                theta=theta,
                delta_w=arith.magnitude(u_state.W - s_state.W),
                delta_main=arith.magnitude(delta),
            ),
        )

    us = np.array([path.point(float(s)) for s in eval_points])
    design = np.column_stack([np.ones_like(us), 1.0 / us])
    (theta0, correction), *_ = np.linalg.lstsq(design, np.array([x.theta for x in samples]), rcond=None)
    w_ratio = max(x.delta_w / x.delta_main for x in samples)
    logger.info(
        "stokes estimate at one height",
        extra={"rho": path.rho, "theta": str(complex(theta0)), "abs_theta": abs(theta0), "w_ratio": w_ratio},
    )
    return RhoEstimate(path.rho, complex(theta0), complex(correction), tuple(samples), w_ratio, path.precision)


def relative_spread(values: Sequence[complex]) -> float:
    """Largest pairwise ``|a - b|`` over the mean modulus."""
    if len(values) < 2:
        return 0.0
    mean = float(np.mean([abs(v) for v in values]))
    return max(abs(a - b) for a, b in itertools.combinations(values, 2)) / mean


def combine_estimates(
    per_rho: Sequence[RhoEstimate],
    threshold: float = SPREAD_THRESHOLD,
    branch: PowerBranch = PowerBranch.UPPER,
) -> StokesEstimate:
    """Average the per-height estimates and measure their spread."""
    thetas = [e.theta for e in per_rho]
    theta = complex(np.mean(thetas))
    return StokesEstimate(
        theta=theta,
        abs_theta=abs(theta),
        per_rho=tuple(per_rho),
        spread=relative_spread(thetas),
        threshold=threshold,
        branch=branch,
    )


def stokes_extract(zu: InnerSolution, zs: InnerSolution, eval_points: Sequence[float] = EVAL_POINTS) -> StokesEstimate:
    """Stokes constant from one pair of solutions."""
    return combine_estimates([extract_rho(zu, zs, eval_points)], branch=zu.path.branch)


def precision_for(rho: float, requested: Precision | None) -> Precision:
    """Compensated precision from ``COMPENSATED_RHO`` up, whatever was asked."""
    if rho < COMPENSATED_RHO:
        return requested or Precision.NATIVE
    if requested is Precision.NATIVE:
        logger.warning("promoting the inner integration to compensated precision", extra={"rho": rho})
    return Precision.COMPENSATED


def solve_pair(
    rho: float,
    *,
    re_max: float = DEFAULT_RE_MAX,
    eval_points: Sequence[float] = EVAL_POINTS,
    precision: Precision | None = None,
    rel_tol: float = 1e-12,
    abs_tol: float = 1e-16,
    branch: PowerBranch = PowerBranch.UPPER,
    seed_iterates: int = MAX_SEED_ITERATES,
) -> tuple[InnerSolution, InnerSolution]:
    """Unstable and stable solutions at height ``rho`` covering the evaluation points."""
    integrator = IntegratorConfig(
        rel_tol=rel_tol,
        abs_tol=abs_tol,
        precision=precision_for(rho, precision),
        dense_output=True,
    )
    overlap = max(abs(s) for s in eval_points) + OVERLAP_MARGIN
    return (
        solve_branch(InnerKind.UNSTABLE, InnerPath.toward(InnerKind.UNSTABLE, rho, re_max, overlap, branch, integrator), seed_iterates),
        solve_branch(InnerKind.STABLE, InnerPath.toward(InnerKind.STABLE, rho, re_max, overlap, branch, integrator), seed_iterates),
    )


def stokes_constant(
    rhos: Sequence[float] = DEFAULT_RHOS,
    *,
    re_max: float = DEFAULT_RE_MAX,
    eval_points: Sequence[float] = EVAL_POINTS,
    precision: Precision | None = None,
    rel_tol: float = 1e-12,
    abs_tol: float = 1e-16,
    branch: PowerBranch = PowerBranch.UPPER,
    seed_iterates: int = MAX_SEED_ITERATES,
    threshold: float = SPREAD_THRESHOLD,
    require_valid: bool = False,
) -> StokesEstimate:
    """Run the full pipeline at every height and combine the estimates.

    An estimate whose spread exceeds ``threshold`` is returned with
    ``valid`` false, or raises when ``require_valid`` is set.
    """
    if not rhos:
        msg = "at least one path height is needed"
        raise InnerDomainError(msg)
    per_rho = []
    for rho in rhos:
        zu, zs = solve_pair(
            rho,
            re_max=re_max,
            eval_points=eval_points,
            precision=precision,
            rel_tol=rel_tol,
            abs_tol=abs_tol,
            branch=branch,
            seed_iterates=seed_iterates,
        )
        per_rho.append(extract_rho(zu, zs, eval_points))
    estimate = combine_estimates(per_rho, threshold, branch)
    logger.info(
        "stokes constant",
        extra={"abs_theta": estimate.abs_theta, "spread": estimate.spread, "branch": str(branch), "rhos": list(rhos)},
    )
    if not estimate.valid:
        msg = f"Stokes estimates spread {estimate.spread:.2e} over rho={list(rhos)} exceeds {threshold:g}"
        if require_valid:
            raise StokesSpreadError(msg)
        logger.warning("stokes estimates disagree across heights", extra={"spread": estimate.spread, "threshold": threshold})
    return estimate


def conjugate_mismatch(estimate: StokesEstimate, conjugate: StokesEstimate) -> float:
    """``|conj(Theta_lower) - Theta_upper| / |Theta_upper|``."""
    return abs(conjugate.theta.conjugate() - estimate.theta) / estimate.abs_theta
