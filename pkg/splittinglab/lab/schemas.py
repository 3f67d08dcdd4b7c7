"""Schemas for run configuration, reports and the HTTP API."""

import itertools
import os
from datetime import datetime
from pathlib import Path
from typing import Any, Self

import numpy as np
from ninja import Field, Schema
from pydantic import field_validator, model_validator

from numerics.precision import Precision
from pendulum.constant_a import ConstantAMethod
from splitting.config import SectionKind

from .constants import CommandName, OutputFormat, RunDefaults
from .exceptions import GridSpecError

GRID_SPACINGS = ("log", "lin")
MU_COMMANDS = frozenset({CommandName.LAGRANGE, CommandName.SPLITTING, CommandName.SCALED_SPLITTING})


def parse_mu_grid(spec: str) -> list[float]:
    """Parse ``lo:hi:log:n``, ``lo:hi:lin:n`` or a comma list into mass ratios.

    The grid must be strictly positive and strictly increasing.
    """
    text = spec.strip()
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 4:  # noqa: PLR2004
                msg = f"grid '{spec}' must read lo:hi:log:n or lo:hi:lin:n"
                raise GridSpecError(msg)
            lo, hi, spacing, count = float(parts[0]), float(parts[1]), parts[2].strip(), int(parts[3])
            if spacing not in GRID_SPACINGS:
                msg = f"grid spacing '{spacing}' must be one of {', '.join(GRID_SPACINGS)}"
                raise GridSpecError(msg)
            if count < 2 or not 0 < lo < hi:  # noqa: PLR2004
                msg = f"grid '{spec}' needs 0 < lo < hi and at least two points"
                raise GridSpecError(msg)
            grid = np.geomspace(lo, hi, count) if spacing == "log" else np.linspace(lo, hi, count)
            values = [float(v) for v in grid]
        else:
            values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        msg = f"grid '{spec}' is not numeric: {e!s}"
        raise GridSpecError(msg) from e

    if not values:
        msg = "grid is empty"
        raise GridSpecError(msg)
    if any(v <= 0 for v in values):
        msg = f"grid '{spec}' must be strictly positive"
        raise GridSpecError(msg)
    if any(b <= a for a, b in itertools.pairwise(values)):
        msg = f"grid '{spec}' must be sorted in strictly increasing order"
        raise GridSpecError(msg)
    return values


class RunConfig(Schema):
    """Configuration of one run, shared by the management commands and the API."""

    command: CommandName
    mu: float | None = None
    mu_grid: str | None = None
    theta_star: float = RunDefaults.THETA_STAR
    lambda_star: float = RunDefaults.LAMBDA_STAR
    section: SectionKind = SectionKind.THETA
    rel_tol: float = Field(RunDefaults.REL_TOL, gt=0)
    abs_tol: float = Field(RunDefaults.ABS_TOL, gt=0)
    # None lets the inner pipeline choose per height.
    precision: Precision | None = None
    epsilon: float = Field(RunDefaults.EPSILON, gt=0)
    output_format: OutputFormat = OutputFormat.JSON
    output: str | None = None
    seed: int = RunDefaults.SEED
    samples: int = Field(RunDefaults.SAMPLES, gt=0)
    workers: int | None = Field(None, gt=0)
    fit: bool = False
    tol: float = Field(RunDefaults.CONSTANT_A_TOL, gt=0)
    method: ConstantAMethod | None = None
    span: float = Field(RunDefaults.SEPARATRIX_SPAN, gt=0)
    step: float = Field(RunDefaults.SEPARATRIX_STEP, gt=0)
    rhos: list[float] = Field(default_factory=lambda: list(RunDefaults.RHOS), min_length=1)
    re_max: float = Field(RunDefaults.RE_MAX, gt=0)
    inner_abs_tol: float = Field(RunDefaults.INNER_ABS_TOL, gt=0)
    seed_iterates: int = Field(RunDefaults.SEED_ITERATES, ge=1, le=2)
    conjugate_check: bool = False
    samples_csv: str | None = None

    @field_validator("mu_grid")
    @classmethod
    def check_grid(cls: type[Self], value: str | None) -> str | None:
        """Reject grids that do not parse."""
        if value is None:
            return value
        try:
            parse_mu_grid(value)
        except GridSpecError as e:
            raise ValueError(str(e)) from e
        return value

    @field_validator("output", "samples_csv")
    @classmethod
    def check_writable(cls: type[Self], value: str | None) -> str | None:
        """Reject paths whose directory is missing or read-only."""
        if value is None:
            return value
        parent = Path(value).expanduser().resolve().parent
        if not parent.is_dir() or not os.access(parent, os.W_OK):
            msg = f"cannot write to '{value}': directory '{parent}' is missing or read-only"
            raise ValueError(msg)
        return value

    @model_validator(mode="after")
    def check_mass_ratios(self: Self) -> Self:
        """Commands that need a mass ratio must get one."""
        if self.command in MU_COMMANDS and self.mu is None:
            msg = f"'{self.command}' needs --mu"
            raise ValueError(msg)
        if self.command is CommandName.SWEEP and self.mu is None and self.mu_grid is None:
            msg = "'sweep' needs --mu-grid or --mu"
            raise ValueError(msg)
        return self

    def mus(self: Self) -> list[float]:
        """Mass ratios of the run in grid order."""
        if self.mu_grid is not None:
            return parse_mu_grid(self.mu_grid)
        return [] if self.mu is None else [self.mu]


class ComplexSchema(Schema):
    """A complex number as its two parts."""

    real: float
    imag: float

    @classmethod
    def of(cls: type[Self], value: complex) -> Self:
        """Split a complex number."""
        value = complex(value)
        return cls(real=value.real, imag=value.imag)


class LagrangePointSchema(Schema):
    """One equilibrium with its spectrum."""

    label: str
    q1: float
    q2: float
    p1: float
    p2: float
    h: float
    jacobi: float
    gradient_norm: float
    saddle_centre: bool
    hyperbolic_rate: float | None = None
    elliptic_frequency: float | None = None
    eigenvalues: list[ComplexSchema]


class LagrangeReportSchema(Schema):
    """The five equilibria at one mass ratio."""

    mu: float
    precision: Precision
    l3_gradient_norm: float
    points: list[LagrangePointSchema]


class ConstantAResultSchema(Schema):
    """One quadrature of the singularity constant."""

    method: ConstantAMethod
    value: float
    error_estimate: float
    levels: int
    evaluations: int
    deviation_from_published: float


class ConstantAReportSchema(Schema):
    """Constant A by one or both quadratures."""

    tol: float
    published: float
    results: list[ConstantAResultSchema]
    agreement: float | None = None


class SeparatrixSampleSchema(Schema):
    """One separatrix point."""

    t: float
    lambda_h: float
    Lambda_h: float
    energy: float


class SeparatrixReportSchema(Schema):
    """Separatrix samples on a uniform time grid."""

    span: float
    step: float
    max_energy_error: float
    samples: list[SeparatrixSampleSchema]


class SplittingReportSchema(Schema):
    """Splitting distance of the invariant manifolds on one section."""

    mu: float
    section_kind: str
    section_value: float
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
    extras: dict[str, float] = Field(default_factory=dict)


class AsymptoticFitSchema(Schema):
    """Fit of the splitting law over a sweep."""

    A: float
    c: float
    prefactor_exponent: float
    rms_residual: float
    residuals: list[float]
    n_points: int
    decades: float
    c0: float
    c1: float
    reference_A: float
    relative_A_error: float


class SweepEntrySchema(Schema):
    """Outcome at one mass ratio of a sweep."""

    mu: float
    status: str
    error_code: str | None = None
    message: str = ""
    report: SplittingReportSchema | None = None


class SweepReportSchema(Schema):
    """A sweep in grid order, with its fit when requested."""

    section_kind: str
    section_value: float
    workers: int
    entries: list[SweepEntrySchema]
    fit: AsymptoticFitSchema | None = None
    fit_error: str | None = None


class ThetaSampleSchema(Schema):
    """``theta(U)`` at one point of the overlap."""

    rho: float
    re_u: float
    theta: ComplexSchema
    abs_theta: float
    delta_w: float
    delta_main: float


class RhoEstimateSchema(Schema):
    """Stokes constant estimate at one path height."""

    rho: float
    theta: ComplexSchema
    abs_theta: float
    correction: ComplexSchema
    w_ratio: float
    precision: Precision
    samples: list[ThetaSampleSchema]


class StokesReportSchema(Schema):
    """Stokes constant over path heights."""

    branch: str
    theta: ComplexSchema
    abs_theta: float
    spread: float
    threshold: float
    valid: bool
    re_max: float
    seed_iterates: int
    per_rho: list[RhoEstimateSchema]
    conjugate_mismatch: float | None = None


class CoordinateCheckSchema(Schema):
    """One coordinate property check."""

    name: str
    worst: float
    threshold: float
    passed: bool
    detail: str = ""


class CheckCoordsReportSchema(Schema):
    """Summary of the coordinate property checks."""

    samples: int
    seed: int
    passed: bool
    checks: list[CoordinateCheckSchema]


class RunManifestSchema(Schema):
    """Provenance of a run: configuration, versions, timing and diagnostics."""

    command: CommandName
    config: dict[str, Any]
    versions: dict[str, str]
    wall_time: float
    checks: dict[str, bool]
    diagnostics: dict[str, Any]
    warnings: list[str]
    exit_code: int


class CommandInfoSchema(Schema):
    """A command the lab can run."""

    name: CommandName
    description: str


class RunCreateResponseSchema(Schema):
    """Schema for run creation response."""

    run_id: int
    status: str
    message: str = "Run queued successfully"


class RunResponseSchema(Schema):
    """Schema for a stored run."""

    id: int
    command: str
    status: str
    created_at: datetime
    started_at: datetime | None
    finished_at: datetime | None
    wall_time: float | None
    exit_code: int | None
    error_code: str
    error_message: str
    config: dict[str, Any]
    result: dict[str, Any] | None
    manifest: dict[str, Any] | None


class ErrorResponseSchema(Schema):
    """Schema for error response."""

    message: str
    code: str
    detail: str | None = None


REPORT_SCHEMAS: dict[str, type[Schema]] = {
    "run_config": RunConfig,
    "run_manifest": RunManifestSchema,
    "lagrange": LagrangeReportSchema,
    "constant_a": ConstantAReportSchema,
    "separatrix": SeparatrixReportSchema,
    "splitting": SplittingReportSchema,
    "sweep": SweepReportSchema,
    "stokes": StokesReportSchema,
    "check_coords": CheckCoordsReportSchema,
}
