"""Shared plumbing of the lab management commands."""

import logging
import time
from argparse import ArgumentParser
from typing import Any, ClassVar

from django.core.management.base import BaseCommand, CommandError

from numerics.exceptions import LabError, ParameterError
from numerics.precision import Precision

from ..constants import CommandName, ErrorMessages, ExitCode, OutputFormat
from ..exceptions import OutputPathError
from ..reporting import build_failure_manifest, build_manifest, collect_warnings, render, write_manifest, write_text
from ..runner import CommandRunner, RunOutcome
from ..schemas import RunConfig, RunManifestSchema
from ..services import RunService

logger = logging.getLogger(__name__)

VERBOSITY_LEVELS = {0: logging.ERROR, 2: logging.DEBUG, 3: logging.DEBUG}


def add_splitting_arguments(parser: ArgumentParser) -> None:
    """Options of the manifold computations."""
    parser.add_argument("--epsilon", type=float, help="Seed offset along the eigenvectors of L3")
    parser.add_argument("--theta", dest="theta_star", type=float, help="Angle of the theta section")
    parser.add_argument("--lambda", dest="lambda_star", type=float, help="Angle of the scaled lambda section")


class LabCommand(BaseCommand):
    """Run one computation and write its report, manifest and exit code.

    stdout carries only the report. Validation errors exit with 1; numerical
    failures and failed internal checks exit with 2, after the output is written.
    Every run past validation leaves a manifest, failed runs included.
    """

    command_name: ClassVar[CommandName]
    default_format: ClassVar[OutputFormat] = OutputFormat.JSON

    def add_arguments(self: "LabCommand", parser: ArgumentParser) -> None:
        """Options shared by every computation, then the command's own."""
        parser.add_argument("--precision", choices=[p.value for p in Precision], help="Scalar precision mode")
        parser.add_argument("--rel-tol", type=float, help="Relative integration tolerance")
        parser.add_argument("--abs-tol", type=float, help="Absolute integration tolerance")
        parser.add_argument(
            "--format",
            dest="output_format",
            choices=[f.value for f in OutputFormat],
            default=self.default_format.value,
            help="Output format",
        )
        parser.add_argument("--json", dest="output_format", action="store_const", const=OutputFormat.JSON.value, help="Shorthand for --format json")
        parser.add_argument("--output", help="Write the report here and the manifest next to it")
        self.add_command_arguments(parser)

    def add_command_arguments(self: "LabCommand", parser: ArgumentParser) -> None:
        """Options of the computation."""

    def config_options(self: "LabCommand", options: dict[str, Any]) -> dict[str, Any]:
        """Map parsed options onto ``RunConfig`` fields."""
        return {}

    def write_extra(self: "LabCommand", cfg: RunConfig, outcome: RunOutcome) -> None:
        """Write any output besides the report."""

    def configure_logging(self: "LabCommand", verbosity: int) -> None:
        """Follow ``--verbosity``; 1 keeps the configured level."""
        if verbosity in VERBOSITY_LEVELS:
            logging.getLogger().setLevel(VERBOSITY_LEVELS[verbosity])

    def handle(self: "LabCommand", *args: Any, **options: Any) -> None:
        """Validate, run, write the report and the manifest, then exit."""
        self.configure_logging(options["verbosity"])
        data = {
            "command": self.command_name,
            "precision": options.get("precision"),
            "rel_tol": options.get("rel_tol"),
            "abs_tol": options.get("abs_tol"),
            "output_format": options.get("output_format"),
            "output": options.get("output"),
            **self.config_options(options),
        }
        try:
            cfg = RunService.build_config({k: v for k, v in data.items() if v is not None})
        except ParameterError as exc:
            raise CommandError(str(exc), returncode=ExitCode.VALIDATION) from exc

        start_time = time.perf_counter()
        with collect_warnings() as warnings:
            try:
                outcome = CommandRunner().execute(cfg)
                write_text(render(outcome, cfg.output_format), cfg.output, self.stdout)
                self.write_extra(cfg, outcome)
            except LabError as exc:
                code = ExitCode.VALIDATION if isinstance(exc, ParameterError) else ExitCode.NUMERICAL
                logger.error("computation failed", extra={"command": str(self.command_name), "error": type(exc).__name__})
                manifest = build_failure_manifest(cfg, exc, warnings, time.perf_counter() - start_time, code)
                self.write_failure_manifest(manifest, cfg)
                raise CommandError(f"{type(exc).__name__}: {exc!s}", returncode=code) from exc

        write_manifest(build_manifest(cfg, outcome, warnings), cfg.output, self.stderr)
        if not outcome.passed:
            msg = f"{ErrorMessages.CHECKS_FAILED}: {', '.join(outcome.failed_checks)}"
            raise CommandError(msg, returncode=ExitCode.NUMERICAL)

    def write_failure_manifest(self: "LabCommand", manifest: RunManifestSchema, cfg: RunConfig) -> None:
        """Manifest of a failed run; falls back to stderr when the output path is unusable."""
        try:
            write_manifest(manifest, cfg.output, self.stderr)
        except OutputPathError:
            write_manifest(manifest, None, self.stderr)
