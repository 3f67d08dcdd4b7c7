"""Samples of the pendulum separatrix for plotting."""

from argparse import ArgumentParser
from typing import Any

from ...constants import CommandName, OutputFormat
from ..base import LabCommand


class Command(LabCommand):
    """Separatrix samples on a uniform grid; the CSV columns are ``t, lambda, Lambda``."""

    help = "Sample the separatrix on [-span, span]"
    command_name = CommandName.SEPARATRIX
    default_format = OutputFormat.CSV

    def add_command_arguments(self: "Command", parser: ArgumentParser) -> None:
        """Grid of separatrix times."""
        parser.add_argument("--span", type=float, help="Half-width of the time grid")
        parser.add_argument("--step", type=float, help="Grid spacing")

    def config_options(self: "Command", options: dict[str, Any]) -> dict[str, Any]:
        """Map parsed options onto ``RunConfig`` fields."""
        return {"span": options.get("span"), "step": options.get("step")}
