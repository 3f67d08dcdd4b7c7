"""Runs one computation of the lab and turns its result into report schemas."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np

from coords.checks import run_coordinate_checks
from inner.hamiltonian import PowerBranch
from inner.stokes import conjugate_mismatch, stokes_constant
from pendulum.constant_a import (
    PUBLISHED_A,
    ConstantAMethod,
    ConstantAResult,
    constant_A_lambda_integral,
    constant_A_x_integral,
)
from pendulum.separatrix import separatrix_handle
from rpc3bp.hamiltonian import hamiltonian_h, jacobi_constant
from rpc3bp.lagrange import LagrangePoint, lagrange_points
from rpc3bp.params import MuParam
from splitting.config import Section, SectionKind, SplittingConfig
from splitting.distance import SplittingReport, reversibility_check, scaled_section_splitting, splitting_distance
from splitting.sweep import default_workers, run_sweep

from .constants import CheckLimits, CommandName, RunDefaults
from .schemas import (
    AsymptoticFitSchema,
    CheckCoordsReportSchema,
    ComplexSchema,
    ConstantAReportSchema,
    ConstantAResultSchema,
    CoordinateCheckSchema,
    LagrangePointSchema,
    LagrangeReportSchema,
    RhoEstimateSchema,
    SeparatrixReportSchema,
    SeparatrixSampleSchema,
    SplittingReportSchema,
    StokesReportSchema,
    SweepEntrySchema,
    SweepReportSchema,
    ThetaSampleSchema,
)

if TYPE_CHECKING:
    from collections.abc import Callable

    from inner.stokes import StokesEstimate
    from ninja import Schema
    from numerics.precision import Precision

    from .schemas import RunConfig

logger = logging.getLogger(__name__)

SPLITTING_COLUMNS = (
    "mu",
    "section_kind",
    "section_value",
    "distance",
    "normalized_constant",
    "prefactor_exponent",
    "energy_mismatch",
    "tof_unstable",
    "tof_stable",
    "normalized_tof_unstable",
    "normalized_tof_stable",
    "arclength_tof_unstable",
    "arclength_tof_stable",
    "precision",
)

SEPARATRIX_COLUMNS = ("t", "lambda", "Lambda")
# Status columns trail the fixed sweep columns.
SWEEP_COLUMNS = {
    SectionKind.THETA: (
        "mu", "theta_star", "d", "C", "delta_r", "delta_R", "delta_G", "tof_u", "tof_s", "precision",
        "status", "error_code",
    ),
    SectionKind.LAMBDA: (
        "mu", "lambda_star", "d", "C", "delta_x", "delta_y", "delta_Lambda", "tof_u", "tof_s", "precision",
        "status", "error_code",
    ),
}  # fmt: skip


@dataclass(frozen=True)
class Table:
    """Rows of a CSV output with their fixed column order."""

    columns: tuple[str, ...]
    rows: list[dict[str, Any]]


@dataclass
class RunOutcome:
    """Report, CSV table, internal checks and diagnostics of one run."""

    command: CommandName
    report: Schema
    table: Table
    checks: dict[str, bool] = field(default_factory=dict)
    diagnostics: dict[str, Any] = field(default_factory=dict)
    extra_tables: dict[str, Table] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self: RunOutcome) -> bool:
        """Whether every internal check passed."""
        return all(self.checks.values())

    @property
    def failed_checks(self: RunOutcome) -> list[str]:
        """Names of the checks that failed."""
        return [name for name, ok in self.checks.items() if not ok]


def splitting_config(cfg: RunConfig) -> SplittingConfig:
    """Manifold configuration of a run."""
    return SplittingConfig(
        epsilon=cfg.epsilon,
        rel_tol=cfg.rel_tol,
        abs_tol=cfg.abs_tol,
        precision=cfg.precision or RunDefaults.PRECISION,
    )


def splitting_schema(report: SplittingReport) -> SplittingReportSchema:
    """Report schema of a splitting computation."""
    return SplittingReportSchema(
        mu=report.mu,
        section_kind=str(report.section.kind),
        section_value=report.section.value,
        distance=report.distance,
        components=dict(report.components),
        normalized_constant=report.normalized_constant,
        prefactor_exponent=report.prefactor_exponent,
        energy_mismatch=report.energy_mismatch,
        tof_unstable=report.tof_unstable,
        tof_stable=report.tof_stable,
        normalized_tof_unstable=report.normalized_tof_unstable,
        normalized_tof_stable=report.normalized_tof_stable,
        arclength_tof_unstable=report.arclength_tof_unstable,
        arclength_tof_stable=report.arclength_tof_stable,
        epsilon=report.epsilon,
        rel_tol=report.rel_tol,
        abs_tol=report.abs_tol,
        precision=report.precision,
        extras=dict(report.extras),
    )


def _splitting_row(schema: SplittingReportSchema) -> dict[str, Any]:
    row = schema.model_dump(include=set(SPLITTING_COLUMNS))
    row["precision"] = str(schema.precision)
    return row


def _sweep_row(entry: SweepEntrySchema, section: Section, precision: Precision) -> dict[str, Any]:
    report = entry.report
    row: dict[str, Any] = {
        "mu": entry.mu,
        f"{section.kind}_star": section.value,
        "precision": str(report.precision if report is not None else precision),
        "status": entry.status,
        "error_code": entry.error_code,
    }
    if report is not None:
        row |= {
            "d": report.distance,
            "C": report.normalized_constant,
            "tof_u": report.tof_unstable,
            "tof_s": report.tof_stable,
            **report.components,
        }
    return row


def _point_schema(point: LagrangePoint, m: MuParam) -> LagrangePointSchema:
    lin = point.linearization
    q1, q2, p1, p2 = point.state.to_binary64()
    return LagrangePointSchema(
        label=str(point.label),
        q1=q1,
        q2=q2,
        p1=p1,
        p2=p2,
        h=float(hamiltonian_h(point.state, m)),
        jacobi=float(jacobi_constant(point.state, m)),
        gradient_norm=float(point.gradient_norm),
        saddle_centre=lin.saddle_centre,
        hyperbolic_rate=lin.hyperbolic_rate if lin.saddle_centre else None,
        elliptic_frequency=lin.elliptic_frequency if lin.saddle_centre else None,
        eigenvalues=[ComplexSchema.of(z) for z in point.eigenvalues],
    )


def _constant_a_schema(result: ConstantAResult) -> ConstantAResultSchema:
    return ConstantAResultSchema(
        method=result.method,
        value=result.value,
        error_estimate=result.error_estimate,
        levels=result.levels,
        evaluations=result.evaluations,
        deviation_from_published=abs(result.value - PUBLISHED_A),
    )


def _stokes_schema(estimate: StokesEstimate, cfg: RunConfig, mismatch: float | None) -> StokesReportSchema:
    per_rho = [
        RhoEstimateSchema(
            rho=e.rho,
            theta=ComplexSchema.of(e.theta),
            abs_theta=abs(e.theta),
            correction=ComplexSchema.of(e.correction),
            w_ratio=e.w_ratio,
            precision=e.precision,
            samples=[
                ThetaSampleSchema(
                    rho=s.rho,
                    re_u=s.re_u,
                    theta=ComplexSchema.of(s.theta),
                    abs_theta=abs(s.theta),
                    delta_w=s.delta_w,
                    delta_main=s.delta_main,
                )
                for s in e.samples
            ],
        )
        for e in estimate.per_rho
    ]
    return StokesReportSchema(
        branch=str(estimate.branch),
        theta=ComplexSchema.of(estimate.theta),
        abs_theta=estimate.abs_theta,
        spread=estimate.spread,
        threshold=estimate.threshold,
        valid=estimate.valid,
        re_max=cfg.re_max,
        seed_iterates=cfg.seed_iterates,
        per_rho=per_rho,
        conjugate_mismatch=mismatch,
    )


class CommandRunner:
    """Executes a run configuration and collects its report and checks."""

    def execute(self: CommandRunner, cfg: RunConfig) -> RunOutcome:
        """Run ``cfg.command``; domain errors propagate to the caller."""
        handlers: dict[CommandName, Callable[[RunConfig], RunOutcome]] = {
            CommandName.LAGRANGE: self.lagrange,
            CommandName.CONSTANT_A: self.constant_a,
            CommandName.SEPARATRIX: self.separatrix,
            CommandName.SPLITTING: self.splitting,
            CommandName.SCALED_SPLITTING: self.scaled_splitting,
            CommandName.SWEEP: self.sweep,
            CommandName.STOKES: self.stokes,
            CommandName.CHECK_COORDS: self.check_coords,
        }
        start_time = time.perf_counter()
        outcome = handlers[cfg.command](cfg)
        outcome.wall_time = time.perf_counter() - start_time
        logger.info(
            "run finished",
            extra={"command": str(cfg.command), "wall_time": outcome.wall_time, "failed_checks": outcome.failed_checks},
        )
        return outcome

    def lagrange(self: CommandRunner, cfg: RunConfig) -> RunOutcome:
        """Five equilibria with spectra and energies."""
        m = MuParam(cfg.mu)  # type: ignore[arg-type]
        precision = cfg.precision or RunDefaults.PRECISION
        points = lagrange_points(m, precision)
        schemas = [_point_schema(p, m) for p in points]
        l3_norm = float(points.l3.gradient_norm)
        report = LagrangeReportSchema(mu=m.mu, precision=precision, l3_gradient_norm=l3_norm, points=schemas)
        columns = ("label", "q1", "q2", "p1", "p2", "h", "jacobi", "gradient_norm", "hyperbolic_rate", "elliptic_frequency")
        rows = [p.model_dump(include=set(columns)) for p in schemas]
        l3 = points.l3.linearization
        diagnostics = {
            "hyperbolic_ratio": l3.hyperbolic_rate / (math.sqrt(m.mu) * math.sqrt(21.0 / 8.0)),
            "frequency_shift": (l3.elliptic_frequency - 1.0) / m.mu,
        }
        return RunOutcome(
            CommandName.LAGRANGE,
            report,
            Table(columns, rows),
            checks={"l3_gradient": l3_norm <= CheckLimits.L3_GRADIENT},
            diagnostics=diagnostics,
        )

    def constant_a(self: CommandRunner, cfg: RunConfig) -> RunOutcome:
        """Constant A by the requested quadrature, or by both."""
        methods = {
            ConstantAMethod.X_INTEGRAL: constant_A_x_integral,
            ConstantAMethod.LAMBDA_INTEGRAL: constant_A_lambda_integral,
        }
        selected = [cfg.method] if cfg.method else list(methods)
        results = [_constant_a_schema(methods[method](tol=cfg.tol)) for method in selected]
        agreement = abs(results[0].value - results[1].value) if len(results) > 1 else None
        report = ConstantAReportSchema(tol=cfg.tol, published=PUBLISHED_A, results=results, agreement=agreement)
        columns = ("method", "value", "error_estimate", "levels", "evaluations", "deviation_from_published")
        rows = [{**r.model_dump(include=set(columns)), "method": str(r.method)} for r in results]
        checks = {}
        if agreement is not None:
            checks["methods_agree"] = agreement <= CheckLimits.CONSTANT_A_AGREEMENT
        return RunOutcome(CommandName.CONSTANT_A, report, Table(columns, rows), checks=checks)

    def separatrix(self: CommandRunner, cfg: RunConfig) -> RunOutcome:
        """Separatrix samples on ``[-span, span]``."""
        handle = separatrix_handle()
        count = round(2.0 * cfg.span / cfg.step) + 1
        times = np.linspace(-cfg.span, cfg.span, count)
        samples = [
            SeparatrixSampleSchema(t=s.t, lambda_h=s.lambda_h, Lambda_h=s.Lambda_h, energy=s.energy)
            for s in handle.samples([float(t) for t in times])
        ]
        table_error = handle.max_energy_error()
        report = SeparatrixReportSchema(span=cfg.span, step=cfg.step, max_energy_error=table_error, samples=samples)
        rows = [{"t": s.t, "lambda": s.lambda_h, "Lambda": s.Lambda_h} for s in samples]
        return RunOutcome(
            CommandName.SEPARATRIX,
            report,
            Table(SEPARATRIX_COLUMNS, rows),
            checks={"energy_pin": table_error <= CheckLimits.SEPARATRIX_ENERGY},
            diagnostics={"max_sample_energy_error": max(abs(s.energy + 0.5) for s in samples)},
        )

    def splitting(self: CommandRunner, cfg: RunConfig) -> RunOutcome:
        """Splitting distance on the theta section, with the reversibility cross-check."""
        m = MuParam(cfg.mu)  # type: ignore[arg-type]
        scfg = splitting_config(cfg)
        report = splitting_schema(splitting_distance(m, cfg.theta_star, scfg))
        reversibility = reversibility_check(m, cfg.theta_star, scfg)
        return RunOutcome(
            CommandName.SPLITTING,
            report,
            Table(SPLITTING_COLUMNS, [_splitting_row(report)]),
            checks={"energy_mismatch": report.energy_mismatch <= CheckLimits.ENERGY_MISMATCH},
            diagnostics={"reversibility_distance": reversibility.distance, "reversibility_ratio": reversibility.distance / report.distance},
        )

    def scaled_splitting(self: CommandRunner, cfg: RunConfig) -> RunOutcome:
        """Splitting on the scaled lambda section."""
        m = MuParam(cfg.mu)  # type: ignore[arg-type]
        report = splitting_schema(scaled_section_splitting(m, cfg.lambda_star, splitting_config(cfg)))
        dx, dy = report.components["delta_x"], report.components["delta_y"]
        return RunOutcome(
            CommandName.SCALED_SPLITTING,
            report,
            Table(SPLITTING_COLUMNS, [_splitting_row(report)]),
            checks={
                "energy_mismatch": report.energy_mismatch <= CheckLimits.ENERGY_MISMATCH,
                "delta_x_equals_delta_y": abs(dx - dy) <= CheckLimits.SCALED_SYMMETRY * dx,
            },
            diagnostics={"delta_Lambda_over_delta_x": report.components["delta_Lambda"] / dx},
        )

    def sweep(self: CommandRunner, cfg: RunConfig) -> RunOutcome:
        """Splitting over the mass-ratio grid; failed points are kept with their error."""
        value = cfg.theta_star if cfg.section is SectionKind.THETA else cfg.lambda_star
        section = Section(cfg.section, value)
        workers = cfg.workers or default_workers()
        result = run_sweep(cfg.mus(), section, splitting_config(cfg), workers=workers, fit=cfg.fit)
        entries = [
            SweepEntrySchema(
                mu=e.mu,
                status=str(e.status),
                error_code=e.error_code,
                message=e.message,
                report=splitting_schema(e.report) if e.report is not None else None,
            )
            for e in result.entries
        ]
        fit = None
        if result.fit is not None:
            f = result.fit
            fit = AsymptoticFitSchema(
                A=f.A,
                c=f.c,
                prefactor_exponent=f.prefactor_exponent,
                rms_residual=f.rms_residual,
                residuals=list(f.residuals),
                n_points=f.n_points,
                decades=f.decades,
                c0=f.c0,
                c1=f.c1,
                reference_A=f.reference_A,
                relative_A_error=f.relative_A_error,
            )
        report = SweepReportSchema(
            section_kind=str(section.kind),
            section_value=section.value,
            workers=workers,
            entries=entries,
            fit=fit,
            fit_error=result.fit_error,
        )
        precision = cfg.precision or RunDefaults.PRECISION
        rows = [_sweep_row(e, section, precision) for e in entries]
        checks = {"all_points": not result.failed}
        if cfg.fit:
            checks["fit"] = fit is not None
        diagnostics: dict[str, Any] = {"failed_mus": [e.mu for e in result.failed]}
        if fit is not None:
            diagnostics["fitted_A"] = fit.A
            diagnostics["relative_A_error"] = fit.relative_A_error
        return RunOutcome(CommandName.SWEEP, report, Table(SWEEP_COLUMNS[section.kind], rows), checks=checks, diagnostics=diagnostics)

    def stokes(self: CommandRunner, cfg: RunConfig) -> RunOutcome:
        """Stokes constant over the path heights, with the optional conjugate pipeline."""
        options = {
            "re_max": cfg.re_max,
            "precision": cfg.precision,
            "rel_tol": cfg.rel_tol,
            "abs_tol": cfg.inner_abs_tol,
            "seed_iterates": cfg.seed_iterates,
        }
        estimate = stokes_constant(cfg.rhos, branch=PowerBranch.UPPER, **options)
        mismatch = None
        checks = {"rho_stability": estimate.valid}
        if cfg.conjugate_check:
            conjugate = stokes_constant(cfg.rhos, branch=PowerBranch.LOWER, **options)
            mismatch = conjugate_mismatch(estimate, conjugate)
            checks["conjugate_symmetry"] = mismatch <= estimate.threshold
        report = _stokes_schema(estimate, cfg, mismatch)
        columns = ("rho", "theta_real", "theta_imag", "abs_theta", "correction_real", "correction_imag", "w_ratio", "precision")
        rows = [
            {
                "rho": e.rho,
                "theta_real": e.theta.real,
                "theta_imag": e.theta.imag,
                "abs_theta": e.abs_theta,
                "correction_real": e.correction.real,
                "correction_imag": e.correction.imag,
                "w_ratio": e.w_ratio,
                "precision": str(e.precision),
            }
            for e in report.per_rho
        ]
        sample_columns = ("rho", "re_u", "theta_real", "theta_imag", "abs_theta", "delta_w", "delta_main")
        sample_rows = [
            {
                "rho": s.rho,
                "re_u": s.re_u,
                "theta_real": s.theta.real,
                "theta_imag": s.theta.imag,
                "abs_theta": s.abs_theta,
                "delta_w": s.delta_w,
                "delta_main": s.delta_main,
            }
            for e in report.per_rho
            for s in e.samples
        ]
        return RunOutcome(
            CommandName.STOKES,
            report,
            Table(columns, rows),
            checks=checks,
            diagnostics={"spread": estimate.spread, "abs_theta": estimate.abs_theta},
            extra_tables={"samples": Table(sample_columns, sample_rows)},
        )

    def check_coords(self: CommandRunner, cfg: RunConfig) -> RunOutcome:
        """Coordinate property checks on seeded random points."""
        checks = [
            CoordinateCheckSchema(name=c.name, worst=c.worst, threshold=c.threshold, passed=c.passed, detail=c.detail)
            for c in run_coordinate_checks(cfg.samples, cfg.seed)
        ]
        passed = all(c.passed for c in checks)
        report = CheckCoordsReportSchema(samples=cfg.samples, seed=cfg.seed, passed=passed, checks=checks)
        columns = ("name", "worst", "threshold", "passed", "detail")
        return RunOutcome(
            CommandName.CHECK_COORDS,
            report,
            Table(columns, [c.model_dump() for c in checks]),
            checks={c.name: c.passed for c in checks},
        )
