"""Services for the splitting lab."""

import logging
from typing import Any

from pydantic import ValidationError

from .constants import CommandName
from .exceptions import RunConfigError
from .models import ComputationRun
from .schemas import CommandInfoSchema, RunConfig
from .tasks import execute_run

logger = logging.getLogger(__name__)


def validation_message(exc: ValidationError) -> str:
    """One line per failing field, with the CLI spelling of its name."""
    lines = []
    for error in exc.errors():
        location = ".".join(str(part) for part in error["loc"]) or "config"
        lines.append(f"--{location.replace('_', '-')}: {error['msg']}")
    return "; ".join(lines)


class RunService:
    """Service for configuring, queueing and looking up runs."""

    @staticmethod
    def build_config(data: dict[str, Any]) -> RunConfig:
        """Validate raw options into a run configuration."""
        try:
            return RunConfig.model_validate(data)
        except ValidationError as exc:
            raise RunConfigError(validation_message(exc)) from exc

    def create_run(self: "RunService", cfg: RunConfig) -> ComputationRun:
        """Store the run and queue its execution."""
        run = ComputationRun.objects.create(command=cfg.command.value, config=cfg.model_dump(mode="json"))
        logger.info("run queued", extra={"run_id": run.id, "command": str(cfg.command)})
        execute_run.delay(run.id)
        run.refresh_from_db()
        return run

    def get_run(self: "RunService", run_id: int) -> ComputationRun:
        """Get a stored run; raises ``ComputationRun.DoesNotExist``."""
        return ComputationRun.objects.get(id=run_id)

    def list_commands(self: "RunService") -> list[CommandInfoSchema]:
        """Commands a run can ask for."""
        return [CommandInfoSchema(name=command, description=command.display_name) for command in CommandName]
