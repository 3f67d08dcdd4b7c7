"""The singularity constant A of the separatrix."""

from argparse import ArgumentParser
from typing import Any

from pendulum.constant_a import ConstantAMethod

from ...constants import CommandName
from ..base import LabCommand


class Command(LabCommand):
    """Constant A by the x-integral, the lambda-integral or both."""

    help = "Compute the constant A by quadrature and compare the two integrals"
    command_name = CommandName.CONSTANT_A

    def add_command_arguments(self: "Command", parser: ArgumentParser) -> None:
        """Quadrature tolerance and method."""
        parser.add_argument("--tol", type=float, help="Absolute quadrature tolerance")
        parser.add_argument("--method", choices=[m.value for m in ConstantAMethod], help="Run a single method")

    def config_options(self: "Command", options: dict[str, Any]) -> dict[str, Any]:
        """Map parsed options onto ``RunConfig`` fields."""
        return {"tol": options.get("tol"), "method": options.get("method")}
