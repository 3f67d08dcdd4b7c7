"""API for the lab app."""

import logging

from django.http import HttpRequest
from ninja import NinjaAPI
from ninja.errors import HttpError
from ninja.responses import Response

from numerics.exceptions import ParameterError

from .constants import ErrorCodes, ErrorMessages
from .models import ComputationRun
from .schemas import (
    CommandInfoSchema,
    ErrorResponseSchema,
    RunConfig,
    RunCreateResponseSchema,
    RunResponseSchema,
)
from .services import RunService

# Initialize logging
logger = logging.getLogger(__name__)

# Initialize API
api = NinjaAPI(urls_namespace="lab_api", version="1.0.0")
service = RunService()


@api.post(
    "/runs",
    response={
        201: RunCreateResponseSchema,
        400: ErrorResponseSchema,
        500: ErrorResponseSchema,
    },
)
def create_run(request: HttpRequest, payload: RunConfig) -> Response:
    """Store a run and queue it for execution."""
    try:
        run = service.create_run(payload)
        return Response({"run_id": run.id, "status": run.status, "message": "Run queued successfully"}, status=201)
    except ParameterError as exc:
        logger.warning("Run rejected: %s", str(exc), extra={"command": str(payload.command)})
        raise HttpError(400, f"{ErrorCodes.VALIDATION_ERROR}: {exc!s}") from exc
    except Exception as exc:
        logger.exception("Unexpected error queueing run")
        raise HttpError(500, f"{ErrorCodes.INTERNAL_ERROR}: {ErrorMessages.INTERNAL}") from exc


@api.get(
    "/runs/{run_id}",
    response={
        200: RunResponseSchema,
        404: ErrorResponseSchema,
        500: ErrorResponseSchema,
    },
)
def get_run(request: HttpRequest, run_id: int) -> dict:
    """Get status, report and manifest of a run."""
    try:
        run = service.get_run(run_id)
        return {
            "id": run.id,
            "command": run.command,
            "status": run.status,
            "created_at": run.created_at,
            "started_at": run.started_at,
            "finished_at": run.finished_at,
            "wall_time": run.wall_time,
            "exit_code": run.exit_code,
            "error_code": run.error_code,
            "error_message": run.error_message,
            "config": run.config,
            "result": run.result,
            "manifest": run.manifest,
        }
    except ComputationRun.DoesNotExist as exc:
        logger.warning("Run not found: %s", run_id)
        raise HttpError(404, f"{ErrorCodes.RUN_NOT_FOUND}: {ErrorMessages.RUN_NOT_FOUND}") from exc
    except Exception as exc:
        logger.exception("Unexpected error retrieving run")
        raise HttpError(500, f"{ErrorCodes.INTERNAL_ERROR}: {ErrorMessages.INTERNAL}") from exc


@api.get("/commands", response=list[CommandInfoSchema])
def list_commands(request: HttpRequest) -> list[CommandInfoSchema]:
    """List the commands a run can ask for."""
    return service.list_commands()
