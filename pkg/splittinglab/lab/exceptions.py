"""Custom exceptions for the lab app."""

from numerics.exceptions import ParameterError


class RunConfigError(ParameterError):
    """Raised when a run configuration fails validation."""


class GridSpecError(RunConfigError):
    """Raised when a mass-ratio grid cannot be parsed."""


class OutputPathError(RunConfigError):
    """Raised when an output path cannot be written."""
