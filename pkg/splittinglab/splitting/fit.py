"""Least-squares fits of splitting distances against the mass ratio."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from pendulum.constant_a import reference_A

from .distance import SIGMA_PREFACTOR_EXPONENT
from .exceptions import FitDesignError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .distance import SplittingReport

logger = logging.getLogger(__name__)

MIN_FIT_POINTS = 5
MIN_FIT_DECADES = 1.0


@dataclass(frozen=True)
class AsymptoticFit:
    """``d ~ c mu^p exp(-A / sqrt(mu))`` fitted in log form.

    ``c0`` and ``c1`` come from the secondary fit ``C(mu) = c0 + c1 / |ln mu|``
    of the normalized constants computed with the reference A.
    ``residuals`` are the log-law residuals in the order of the mass ratios.
    """

    A: float
    c: float
    prefactor_exponent: float
    rms_residual: float
    residuals: tuple[float, ...]
    n_points: int
    decades: float
    c0: float
    c1: float
    reference_A: float

    @property
    def relative_A_error(self: AsymptoticFit) -> float:
        """``|A_fit - A_ref| / A_ref``."""
        return abs(self.A - self.reference_A) / self.reference_A


def _check_design(mus: np.ndarray) -> float:
    if mus.size < MIN_FIT_POINTS:
        msg = f"at least {MIN_FIT_POINTS} mass ratios are needed, got {mus.size}"
        raise FitDesignError(msg)
    if np.any(mus <= 0):
        msg = "mass ratios must be positive"
        raise FitDesignError(msg)
    decades = float(np.log10(mus.max() / mus.min()))
    if decades < MIN_FIT_DECADES:
        msg = f"mass ratios span {decades:.2f} decades; at least {MIN_FIT_DECADES:g} required"
        raise FitDesignError(msg)
    return decades


def fit_log_law(
    mus: Sequence[float],
    distances: Sequence[float],
    prefactor_exponent: float = SIGMA_PREFACTOR_EXPONENT,
) -> AsymptoticFit:
    """Fit ``ln(d mu^-p) = ln c - A / sqrt(mu)`` on raw arrays."""
    mu_arr = np.asarray(mus, dtype=np.float64)
    d_arr = np.asarray(distances, dtype=np.float64)
    decades = _check_design(mu_arr)
    if np.any(d_arr <= 0):
        msg = "distances must be positive"
        raise FitDesignError(msg)

    target = np.log(d_arr) - prefactor_exponent * np.log(mu_arr)
    design = np.column_stack([np.ones_like(mu_arr), -1.0 / np.sqrt(mu_arr)])
    (ln_c, a_fit), *_ = np.linalg.lstsq(design, target, rcond=None)
    residuals = design @ np.array([ln_c, a_fit]) - target
    rms = float(np.sqrt(np.mean(residuals**2)))

    a_ref = reference_A()
    normalized = d_arr * mu_arr ** (-prefactor_exponent) * np.exp(a_ref / np.sqrt(mu_arr))
    secondary = np.column_stack([np.ones_like(mu_arr), 1.0 / np.abs(np.log(mu_arr))])
    (c0, c1), *_ = np.linalg.lstsq(secondary, normalized, rcond=None)

    fit = AsymptoticFit(
        A=float(a_fit),
        c=math.exp(ln_c),
        prefactor_exponent=prefactor_exponent,
        rms_residual=rms,
        residuals=tuple(float(r) for r in residuals),
        n_points=int(mu_arr.size),
        decades=decades,
        c0=float(c0),
        c1=float(c1),
        reference_A=a_ref,
    )
    logger.info(
        "asymptotic fit",
        extra={"A": fit.A, "c": fit.c, "relative_A_error": fit.relative_A_error, "n": fit.n_points},
    )
    return fit


def fit_asymptotics(reports: Sequence[SplittingReport]) -> AsymptoticFit:
    """Fit the exponential law to a set of splitting reports of one section type."""
    exponents = {r.prefactor_exponent for r in reports}
    if len(exponents) > 1:
        msg = "reports mix section types"
        raise FitDesignError(msg)
    exponent = exponents.pop() if exponents else SIGMA_PREFACTOR_EXPONENT
    return fit_log_law([r.mu for r in reports], [r.distance for r in reports], exponent)


def power_law_exponent(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Slope of ``ln|y|`` against ``ln x``."""
    x = np.log(np.asarray(xs, dtype=np.float64))
    y = np.log(np.abs(np.asarray(ys, dtype=np.float64)))
    if x.size < 2:
        msg = "a power law needs at least two points"
        raise FitDesignError(msg)
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
