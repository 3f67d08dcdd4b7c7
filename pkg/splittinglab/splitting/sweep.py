"""Splitting distances over a grid of mass ratios."""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import TYPE_CHECKING, Self

from numerics.exceptions import LabError
from rpc3bp.params import MuParam

from .config import Section, SectionKind, SplittingConfig
from .distance import SplittingReport, scaled_section_splitting, splitting_distance
from .exceptions import FitDesignError
from .fit import AsymptoticFit, fit_asymptotics

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

WORKERS_ENV = "SPLITTINGLAB_WORKERS"


class SweepStatus(str, Enum):
    """Outcome of one mass ratio."""

    OK = "ok"
    ERROR = "error"

    def __str__(self: Self) -> str:
        """Return string representation."""
        return self.value


@dataclass(frozen=True)
class SweepEntry:
    """Report or failure for one mass ratio."""

    mu: float
    status: SweepStatus
    report: SplittingReport | None = None
    error_code: str | None = None
    message: str = ""


@dataclass(frozen=True)
class SweepResult:
    """Entries in grid order, with the fit over the successful ones when requested."""

    section: Section
    entries: tuple[SweepEntry, ...]
    fit: AsymptoticFit | None = None
    fit_error: str | None = None

    @property
    def reports(self: SweepResult) -> list[SplittingReport]:
        """Reports of the successful entries."""
        return [e.report for e in self.entries if e.report is not None]

    @property
    def failed(self: SweepResult) -> list[SweepEntry]:
        """Entries that raised."""
        return [e for e in self.entries if e.status is SweepStatus.ERROR]


def default_workers() -> int:
    """Worker count from ``SPLITTINGLAB_WORKERS``, 1 when unset."""
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(int(raw), 1)
    except ValueError:
        logger.warning("ignoring non-integer worker count", extra={"value": raw})
        return 1


def _run_one(mu: float, section: Section, cfg: SplittingConfig) -> SweepEntry:
    try:
        m = MuParam(mu)
        if section.kind is SectionKind.THETA:
            report = splitting_distance(m, section.value, cfg)
        else:
            report = scaled_section_splitting(m, section.value, cfg)
    except LabError as e:
        logger.warning("sweep point failed", extra={"mu": mu, "error": type(e).__name__, "detail": str(e)})
        return SweepEntry(mu, SweepStatus.ERROR, error_code=type(e).__name__, message=str(e))
    # Crossing states do not travel back from worker processes.
    return SweepEntry(mu, SweepStatus.OK, report=replace(report, unstable=None, stable=None))


def run_sweep(
    mus: Sequence[float],
    section: Section | None = None,
    cfg: SplittingConfig | None = None,
    *,
    workers: int | None = None,
    fit: bool = False,
) -> SweepResult:
    """Compute the splitting at every mass ratio, serially or on a process pool.

    A failing mass ratio is recorded with its error and the sweep goes on.
    Entries come back in grid order whatever the worker count.
    """
    section = section or Section(SectionKind.THETA, math.pi / 2)
    section.validate()
    cfg = cfg or SplittingConfig()
    workers = workers or default_workers()
    grid = list(mus)

    if workers > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(_run_one, grid, [section] * len(grid), [cfg] * len(grid)))
    else:
        entries = [_run_one(mu, section, cfg) for mu in grid]

    result = SweepResult(section, tuple(entries))
    logger.info(
        "sweep finished",
        extra={"points": len(entries), "failed": len(result.failed), "workers": workers, "section": str(section.kind)},
    )
    if not fit:
        return result
    try:
        return replace(result, fit=fit_asymptotics(result.reports))
    except FitDesignError as e:
        logger.warning("asymptotic fit skipped", extra={"detail": str(e)})
        return replace(result, fit_error=str(e))
