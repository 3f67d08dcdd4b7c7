"""Splitting distances over a grid of mass ratios, with the asymptotic fit."""

from argparse import ArgumentParser
from typing import Any

from splitting.config import SectionKind

from ...constants import CommandName, OutputFormat
from ..base import LabCommand, add_splitting_arguments


class Command(LabCommand):
    """One splitting computation per mass ratio; failures are kept with their error code."""

    help = "Sweep the splitting over a mass-ratio grid such as 1e-3:2e-2:log:8"
    command_name = CommandName.SWEEP
    default_format = OutputFormat.CSV

    def add_command_arguments(self: "Command", parser: ArgumentParser) -> None:
        """Grid, section, workers and fit."""
        parser.add_argument("--mu-grid", help="lo:hi:log:n, lo:hi:lin:n or a comma list")
        parser.add_argument("--mu", type=float, help="Single mass ratio")
        parser.add_argument("--section", choices=[k.value for k in SectionKind], help="Section family")
        parser.add_argument("--workers", type=int, help="Worker processes; defaults to SPLITTINGLAB_WORKERS")
        parser.add_argument("--fit", action="store_true", help="Fit the exponential law to the sweep")
        add_splitting_arguments(parser)

    def config_options(self: "Command", options: dict[str, Any]) -> dict[str, Any]:
        """Map parsed options onto ``RunConfig`` fields."""
        keys = ("mu_grid", "mu", "section", "workers", "fit", "epsilon", "theta_star", "lambda_star")
        return {key: options.get(key) for key in keys}
