"""Property checks of the coordinate tower."""

from argparse import ArgumentParser
from typing import Any

from ...constants import CommandName
from ..base import LabCommand


class Command(LabCommand):
    """Round trips, the series residual and symplecticity on seeded random points."""

    help = "Run the coordinate property checks"
    command_name = CommandName.CHECK_COORDS

    def add_command_arguments(self: "Command", parser: ArgumentParser) -> None:
        """Sample count and seed."""
        parser.add_argument("--samples", type=int, help="Random points per property")
        parser.add_argument("--seed", type=int, help="Seed of the random generator")

    def config_options(self: "Command", options: dict[str, Any]) -> dict[str, Any]:
        """Map parsed options onto ``RunConfig`` fields."""
        return {"samples": options.get("samples"), "seed": options.get("seed")}
