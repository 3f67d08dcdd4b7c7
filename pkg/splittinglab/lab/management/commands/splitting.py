"""Splitting distance of the invariant manifolds of L3 on a theta section."""

from argparse import ArgumentParser
from typing import Any

from ...constants import CommandName
from ..base import LabCommand, add_splitting_arguments


class Command(LabCommand):
    """Distance in ``(r, R, G)`` between the unstable and stable manifolds."""

    help = "Track both manifolds of L3 to the theta section and report their distance"
    command_name = CommandName.SPLITTING

    def add_command_arguments(self: "Command", parser: ArgumentParser) -> None:
        """Mass ratio and manifold options."""
        parser.add_argument("--mu", type=float, required=True, help="Mass ratio in (0, 1/2]")
        add_splitting_arguments(parser)

    def config_options(self: "Command", options: dict[str, Any]) -> dict[str, Any]:
        """Map parsed options onto ``RunConfig`` fields."""
        return {key: options.get(key) for key in ("mu", "epsilon", "theta_star")}
