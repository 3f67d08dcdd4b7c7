"""Stokes constant of the inner equation."""

from argparse import ArgumentParser
from typing import Any

from ...constants import CommandName
from ...reporting import render_table, write_text
from ...runner import RunOutcome
from ...schemas import RunConfig
from ..base import LabCommand


class Command(LabCommand):
    """Theta over path heights from the difference of the inner solutions."""

    help = "Compute the Stokes constant of the inner equation, e.g. --rho 12 --re-max 40"
    command_name = CommandName.STOKES

    def add_command_arguments(self: "Command", parser: ArgumentParser) -> None:
        """Heights, path extent, seeding and the conjugate cross-check."""
        parser.add_argument("--rho", dest="rhos", type=float, nargs="+", help="Path heights below the singularity")
        parser.add_argument("--re-max", type=float, help="Real extent of the paths")
        parser.add_argument("--inner-abs-tol", type=float, help="Absolute tolerance of the inner integration")
        parser.add_argument("--seed-iterates", type=int, choices=[1, 2], help="Picard iterates of the asymptotic seed")
        parser.add_argument("--conjugate-check", action="store_true", help="Also run the conjugate pipeline")
        parser.add_argument("--samples-csv", help="Write the theta(U) samples to this CSV file")

    def config_options(self: "Command", options: dict[str, Any]) -> dict[str, Any]:
        """Map parsed options onto ``RunConfig`` fields."""
        keys = ("rhos", "re_max", "inner_abs_tol", "seed_iterates", "conjugate_check", "samples_csv")
        return {key: options.get(key) for key in keys}

    def write_extra(self: "Command", cfg: RunConfig, outcome: RunOutcome) -> None:
        """The theta samples, when asked for."""
        if cfg.samples_csv is not None:
            write_text(render_table(outcome.extra_tables["samples"]), cfg.samples_csv, self.stdout)
