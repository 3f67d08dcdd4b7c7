"""Splitting of the invariant manifolds of L3 on a section."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from coords.polar import cart_to_polar
from numerics.precision import Precision
from pendulum.constant_a import reference_A
from rpc3bp.hamiltonian import hamiltonian_h, involution_phi
from rpc3bp.lagrange import lagrange_points

from .branches import BranchSign, ManifoldBranch, ManifoldKind, seed_branch
from .config import NATIVE_MU_FLOOR, Section, SectionKind, SplittingConfig, check_mu_floor
from .exceptions import SectionCrossingError, SplittingFloorError
from .sections import SectionCrossing, arclength_time, track_to_section

if TYPE_CHECKING:
    from rpc3bp.params import MuParam
    from rpc3bp.states import CartesianState

logger = logging.getLogger(__name__)

SIGMA_PREFACTOR_EXPONENT = 1.0 / 3.0
SCALED_PREFACTOR_EXPONENT = 1.0 / 12.0


@dataclass(frozen=True)
class SplittingReport:
    """Distance between the unstable and stable crossings of one section.

    On ``theta`` sections the components are ``(delta_r, delta_R, delta_G)``
    and the distance is their Euclidean norm. On ``lambda`` sections they are
    ``(delta_x, delta_y, delta_Lambda)`` and the distance is ``|delta_x|``.
    ``normalized_constant`` divides out ``mu^p exp(-A / sqrt(mu))`` with the
    prefactor exponent p of the section type.
    The ``arclength_tof`` times start where each branch is ``cfg.arclength``
    away from L3 instead of at the seed.
    """

    mu: float
    section: Section
    distance: float
    components: dict[str, float]
    normalized_constant: float
    prefactor_exponent: float
    energy_mismatch: float
    tof_unstable: float
    tof_stable: float
    normalized_tof_unstable: float
    normalized_tof_stable: float
    arclength_tof_unstable: float
    arclength_tof_stable: float
    epsilon: float
    rel_tol: float
    abs_tol: float
    precision: Precision
    extras: dict[str, float] = field(default_factory=dict)
    unstable: SectionCrossing | None = field(default=None, repr=False, compare=False)
    stable: SectionCrossing | None = field(default=None, repr=False, compare=False)


@dataclass(frozen=True)
class ReversibilityReport:
    """Distance between the reflected unstable crossing and the tracked stable one."""

    mu: float
    theta_star: float
    distance: float
    reflected: tuple[float, float, float, float]
    tracked: tuple[float, float, float, float]


def normalized_constant(distance: float, mu: float, exponent: float, a_value: float | None = None) -> float:
    """``distance * mu^(-exponent) * exp(A / sqrt(mu))``."""
    a_value = reference_A() if a_value is None else a_value
    return distance * mu ** (-exponent) * math.exp(a_value / math.sqrt(mu))


def normalized_tof(tof: float, epsilon: float, rate: float) -> float:
    """Time of flight with the seed's logarithmic escape time ``-ln(eps)/nu`` removed."""
    return abs(tof) + math.log(epsilon) / rate


def energy_mismatch(a: CartesianState, b: CartesianState, m: MuParam) -> float:
    """``|h(a) - h(b)|``."""
    return abs(float(hamiltonian_h(a, m) - hamiltonian_h(b, m)))


def _difference(a: Any, b: Any) -> float:
    return float(a - b)


def _branches(m: MuParam, cfg: SplittingConfig, sign: BranchSign = BranchSign.PLUS) -> tuple[ManifoldBranch, ManifoldBranch]:
    check_mu_floor(m.mu)
    if m.mu < NATIVE_MU_FLOOR and cfg.precision is Precision.NATIVE:
        logger.warning(
            "binary64 is unlikely to resolve the splitting at this mass ratio",
            extra={"mu": m.mu, "native_floor": NATIVE_MU_FLOOR},
        )
    l3 = lagrange_points(m, cfg.precision).l3
    unstable = seed_branch(m, ManifoldKind.UNSTABLE, sign, cfg.epsilon, cfg.precision, l3)
    stable = seed_branch(m, ManifoldKind.STABLE, sign, cfg.epsilon, cfg.precision, l3)
    return unstable, stable


def _check_floor(distance: float, cfg: SplittingConfig, mu: float) -> None:
    if distance < cfg.error_floor:
        msg = (
            f"splitting {distance:.3e} at mu={mu!r} is below the numerical floor {cfg.error_floor:.1e}; "
            "use compensated precision with tighter tolerances"
        )
        raise SplittingFloorError(msg)


def _report(
    m: MuParam,
    section: Section,
    cfg: SplittingConfig,
    pair: tuple[ManifoldBranch, ManifoldBranch],
    crossings: tuple[SectionCrossing, SectionCrossing],
    components: dict[str, float],
    distance: float,
    exponent: float,
    extras: dict[str, float],
) -> SplittingReport:
    unstable, stable = pair
    cu, cs = crossings
    rate = unstable.hyperbolic_rate
    return SplittingReport(
        mu=m.mu,
        section=section,
        distance=distance,
        components=components,
        normalized_constant=normalized_constant(distance, m.mu, exponent),
        prefactor_exponent=exponent,
        energy_mismatch=energy_mismatch(cu.state, cs.state, m),
        tof_unstable=cu.time_of_flight,
        tof_stable=cs.time_of_flight,
        normalized_tof_unstable=normalized_tof(cu.time_of_flight, unstable.seed_offset, rate),
        normalized_tof_stable=normalized_tof(cs.time_of_flight, stable.seed_offset, rate),
        arclength_tof_unstable=cu.time_of_flight - arclength_time(unstable, cfg),
        arclength_tof_stable=cs.time_of_flight - arclength_time(stable, cfg),
        epsilon=cfg.epsilon,
        rel_tol=cfg.rel_tol,
        abs_tol=cfg.abs_tol,
        precision=cfg.precision,
        extras=extras,
        unstable=cu,
        stable=cs,
    )


def splitting_distance(m: MuParam, theta_star: float = math.pi / 2, cfg: SplittingConfig | None = None) -> SplittingReport:
    """Distance in ``(r, R, G)`` between ``W^{u,+}`` and ``W^{s,+}`` on ``{theta = theta_star}``.

    Both branches are tracked at identical tolerances to their first
    admissible crossing, where ``r > 1``.
    """
    cfg = cfg or SplittingConfig()
    section = Section(SectionKind.THETA, theta_star)
    section.validate()
    pair = _branches(m, cfg)
    cu, cs = (track_to_section(branch, section, cfg) for branch in pair)
    components = {
        "delta_r": _difference(cu.polar.r, cs.polar.r),
        "delta_R": _difference(cu.polar.R, cs.polar.R),
        "delta_G": _difference(cu.polar.G, cs.polar.G),
    }
    distance = math.sqrt(sum(c * c for c in components.values()))
    _check_floor(distance, cfg, m.mu)
    extras = {"r_unstable": float(cu.polar.r), "r_stable": float(cs.polar.r)}
    report = _report(m, section, cfg, pair, (cu, cs), components, distance, SIGMA_PREFACTOR_EXPONENT, extras)
    logger.info(
        "splitting distance computed",
        extra={"mu": m.mu, "theta_star": theta_star, "distance": distance, "C": report.normalized_constant},
    )
    return report


def scaled_section_splitting(m: MuParam, lambda_star: float = 1.0, cfg: SplittingConfig | None = None) -> SplittingReport:
    """Differences ``(x, y, Lam)`` of ``W^{u,+}`` and ``W^{s,+}`` on ``{lam = lambda_star}``.

    The crossing states go through the Poincare and scaling maps. The
    reported distance is ``|delta_x|``; on the real slice ``|delta_y|`` equals
    it exactly.
    """
    cfg = cfg or SplittingConfig()
    section = Section(SectionKind.LAMBDA, lambda_star)
    section.validate()
    pair = _branches(m, cfg)
    cu, cs = (track_to_section(branch, section, cfg) for branch in pair)
    su, ss = cu.scaled, cs.scaled
    if su is None or ss is None:  # pragma: no cover
        msg = "lambda crossing without a scaled state"
        raise SectionCrossingError(msg)
    dx = complex(su.x - ss.x)
    dy = complex(su.y - ss.y)
    components = {
        "delta_x": abs(dx),
        "delta_y": abs(dy),
        "delta_Lambda": abs(_difference(su.Lam, ss.Lam)),
    }
    distance = components["delta_x"]
    _check_floor(distance, cfg, m.mu)
    extras = {
        "Lambda_unstable": float(su.Lam),
        "Lambda_stable": float(ss.Lam),
        "delta_x_real": dx.real,
        "delta_x_imag": dx.imag,
    }
    report = _report(m, section, cfg, pair, (cu, cs), components, distance, SCALED_PREFACTOR_EXPONENT, extras)
    logger.info(
        "scaled-section splitting computed",
        extra={"mu": m.mu, "lambda_star": lambda_star, "delta_x": distance, "delta_Lambda": components["delta_Lambda"]},
    )
    return report


def reversibility_check(m: MuParam, theta_star: float = math.pi / 2, cfg: SplittingConfig | None = None) -> ReversibilityReport:
    """Compare the reflected ``W^{u,+}`` crossing with the tracked ``W^{s,-}`` crossing.

    The involution maps ``{theta = theta_star}`` to ``{theta = -theta_star}``
    and the unstable plus branch onto the stable minus branch.
    """
    cfg = cfg or SplittingConfig()
    section = Section(SectionKind.THETA, theta_star)
    section.validate()
    l3 = lagrange_points(m, cfg.precision).l3
    unstable = seed_branch(m, ManifoldKind.UNSTABLE, BranchSign.PLUS, cfg.epsilon, cfg.precision, l3)
    stable = seed_branch(m, ManifoldKind.STABLE, BranchSign.MINUS, cfg.epsilon, cfg.precision, l3)
    cu = track_to_section(unstable, section, cfg)
    cs = track_to_section(stable, section.mirrored(), cfg)
    reflected = cart_to_polar(involution_phi(cu.state))
    diffs = [
        _difference(reflected.r, cs.polar.r),
        _difference(reflected.R, cs.polar.R),
        _difference(reflected.G, cs.polar.G),
    ]
    distance = math.sqrt(sum(d * d for d in diffs))
    logger.info("reversibility check", extra={"mu": m.mu, "theta_star": theta_star, "distance": distance})
    return ReversibilityReport(m.mu, theta_star, distance, reflected.to_binary64(), cs.polar.to_binary64())
