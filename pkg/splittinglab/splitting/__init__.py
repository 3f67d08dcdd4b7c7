"""Invariant manifolds of L3, their splitting on a section and its asymptotics."""

from .branches import BranchSign, ManifoldBranch, ManifoldKind, oriented, seed_branch
from .config import (
    EPSILON_RANGE,
    MU_FLOOR,
    NATIVE_MU_FLOOR,
    Section,
    SectionKind,
    SplittingConfig,
    check_mu_floor,
)
from .distance import (
    ReversibilityReport,
    SplittingReport,
    energy_mismatch,
    normalized_constant,
    normalized_tof,
    reversibility_check,
    scaled_section_splitting,
    splitting_distance,
)
from .fit import AsymptoticFit, fit_asymptotics, fit_log_law, power_law_exponent
from .invariance import InvarianceResult, invariance_residual
from .sections import SectionCrossing, arclength_time, section_angle, track_to_section
from .sweep import SweepEntry, SweepResult, SweepStatus, default_workers, run_sweep

__all__ = [
    "EPSILON_RANGE",
    "MU_FLOOR",
    "NATIVE_MU_FLOOR",
    "AsymptoticFit",
    "BranchSign",
    "InvarianceResult",
    "ManifoldBranch",
    "ManifoldKind",
    "ReversibilityReport",
    "Section",
    "SectionCrossing",
    "SectionKind",
    "SplittingConfig",
    "SplittingReport",
    "SweepEntry",
    "SweepResult",
    "SweepStatus",
    "arclength_time",
    "check_mu_floor",
    "default_workers",
    "energy_mismatch",
    "fit_asymptotics",
    "fit_log_law",
    "invariance_residual",
    "normalized_constant",
    "normalized_tof",
    "oriented",
    "power_law_exponent",
    "reversibility_check",
    "run_sweep",
    "scaled_section_splitting",
    "section_angle",
    "seed_branch",
    "splitting_distance",
    "track_to_section",
]
