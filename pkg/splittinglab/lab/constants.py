"""Constants used throughout the lab app."""

import math
from enum import Enum
from typing import Self

from numerics.precision import Precision


class CommandName(str, Enum):
    """Computations the lab can run."""

    LAGRANGE = "lagrange"
    CONSTANT_A = "constant_a"
    SEPARATRIX = "separatrix"
    SPLITTING = "splitting"
    SCALED_SPLITTING = "scaled_splitting"
    SWEEP = "sweep"
    STOKES = "stokes"
    CHECK_COORDS = "check_coords"

    @classmethod
    def choices(cls: type[Self]) -> list[tuple[str, str]]:
        """Return choices for Django model field."""
        return [(command.value, command.display_name) for command in cls]

    @property
    def display_name(self: Self) -> str:
        """Return human-readable command name."""
        return {
            self.LAGRANGE: "Lagrange points and spectra",
            self.CONSTANT_A: "Singularity constant A",
            self.SEPARATRIX: "Pendulum separatrix samples",
            self.SPLITTING: "Splitting distance on a theta section",
            self.SCALED_SPLITTING: "Splitting on a scaled lambda section",
            self.SWEEP: "Splitting sweep over mass ratios",
            self.STOKES: "Stokes constant of the inner equation",
            self.CHECK_COORDS: "Coordinate property checks",
        }[self]

    @classmethod
    def from_str(cls: type[Self], value: str) -> Self:
        """Convert string to enum value; hyphens are accepted for underscores."""
        try:
            return cls(value.replace("-", "_"))
        except ValueError as e:
            msg = f"'{value}' is not a valid {cls.__name__}"
            raise ValueError(msg) from e

    def __str__(self: Self) -> str:
        """Return string representation."""
        return self.value


class RunStatus(str, Enum):
    """Lifecycle of a stored computation run."""

    QUEUED = "QUEUED"
    RUNNING = "RUNNING"
    SUCCEEDED = "SUCCEEDED"
    CHECK_FAILED = "CHECK_FAILED"
    FAILED = "FAILED"

    @classmethod
    def choices(cls: type[Self]) -> list[tuple[str, str]]:
        """Return choices for Django model field."""
        return [(status.value, status.display_name) for status in cls]

    @property
    def display_name(self: Self) -> str:
        """Return human-readable status name."""
        return {
            self.QUEUED: "Queued",
            self.RUNNING: "Running",
            self.SUCCEEDED: "Succeeded",
            self.CHECK_FAILED: "Finished With Failed Checks",
            self.FAILED: "Failed",
        }[self]

    def __str__(self: Self) -> str:
        """Return string representation."""
        return self.value


class OutputFormat(str, Enum):
    """Machine-readable output formats."""

    CSV = "csv"
    JSON = "json"

    def __str__(self: Self) -> str:
        """Return string representation."""
        return self.value


class ExitCode(int, Enum):
    """Process exit codes of the management commands."""

    OK = 0
    VALIDATION = 1
    NUMERICAL = 2


class RunDefaults:
    """Defaults of a run configuration."""

    THETA_STAR = math.pi / 2
    LAMBDA_STAR = 1.0
    REL_TOL = 1e-12
    ABS_TOL = 1e-15
    PRECISION = Precision.NATIVE
    EPSILON = 1e-7
    CONSTANT_A_TOL = 1e-12
    SEPARATRIX_SPAN = 10.0
    SEPARATRIX_STEP = 0.05
    SAMPLES = 1000
    SEED = 42
    RHOS = (8.0, 12.0, 16.0)
    RE_MAX = 60.0
    INNER_ABS_TOL = 1e-16
    SEED_ITERATES = 2


class CheckLimits:
    """Thresholds of the internal checks that decide the exit code."""

    L3_GRADIENT = 1e-11
    CONSTANT_A_AGREEMENT = 1e-8
    SEPARATRIX_ENERGY = 1e-10
    ENERGY_MISMATCH = 1e-10
    SCALED_SYMMETRY = 1e-13


class ErrorMessages:
    """Error messages used throughout the application."""

    RUN_NOT_FOUND = "Run not found"
    INTERNAL = "Internal server error"
    CHECKS_FAILED = "One or more internal checks failed"


class ErrorCodes:
    """Error codes for API responses and run records."""

    # Validation errors
    VALIDATION_ERROR = "VALIDATION_ERROR"

    # Not found errors
    RUN_NOT_FOUND = "RUN_NOT_FOUND"

    # Numerical errors
    NUMERICAL_ERROR = "NUMERICAL_ERROR"

    # Generic errors
    INTERNAL_ERROR = "INTERNAL_ERROR"
