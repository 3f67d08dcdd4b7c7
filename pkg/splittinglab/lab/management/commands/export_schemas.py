"""JSON Schema files of the lab's reports."""

import json
import logging
from argparse import ArgumentParser
from pathlib import Path
from typing import Any

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from ...constants import ExitCode
from ...schemas import REPORT_SCHEMAS

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    """Write one ``<name>.schema.json`` per report."""

    help = "Export the JSON Schema of every report and of the run manifest"

    def add_arguments(self: "Command", parser: ArgumentParser) -> None:
        """Target directory."""
        parser.add_argument("--directory", default=str(settings.SCHEMA_DIR), help="Where to write the schema files")

    def handle(self: "Command", *args: Any, **options: Any) -> None:
        """Write the schema files."""
        directory = Path(options["directory"])
        try:
            directory.mkdir(parents=True, exist_ok=True)
            for name, schema in REPORT_SCHEMAS.items():
                path = directory / f"{name}.schema.json"
                path.write_text(json.dumps(schema.model_json_schema(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
                logger.debug("schema written", extra={"path": str(path)})
        except OSError as exc:
            msg = f"cannot write schemas to '{directory}': {exc!s}"
            raise CommandError(msg, returncode=ExitCode.VALIDATION) from exc
        self.stdout.write(f"{len(REPORT_SCHEMAS)} schemas written to {directory}")
