"""Lagrange points of the RPC3BP with their spectra."""

from argparse import ArgumentParser
from typing import Any

from ...constants import CommandName
from ..base import LabCommand


class Command(LabCommand):
    """Report the five equilibria at one mass ratio."""

    help = "Locate L1..L5 and report positions, energies and eigenvalues"
    command_name = CommandName.LAGRANGE

    def add_command_arguments(self: "Command", parser: ArgumentParser) -> None:
        """Mass ratio."""
        parser.add_argument("--mu", type=float, required=True, help="Mass ratio in (0, 1/2]")

    def config_options(self: "Command", options: dict[str, Any]) -> dict[str, Any]:
        """Map parsed options onto ``RunConfig`` fields."""
        return {"mu": options["mu"]}
