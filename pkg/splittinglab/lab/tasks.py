"""Tasks for the splitting lab."""

import logging
import time

from celery import shared_task
from celery.app.task import Task
from django.db import OperationalError

from numerics.exceptions import NumericalError, ParameterError

from .constants import ErrorCodes, ExitCode
from .models import ComputationRun
from .reporting import build_failure_manifest, build_manifest, collect_warnings, make_serializable
from .runner import CommandRunner
from .schemas import RunConfig

logger = logging.getLogger(__name__)


@shared_task(bind=True, max_retries=3, autoretry_for=(OperationalError,), retry_backoff=True)
def execute_run(self: Task, run_id: int) -> str:
    """Execute a stored run in the background and record its outcome.

    Domain errors are deterministic, so they mark the run failed instead of retrying.
    """
    run = ComputationRun.objects.get(id=run_id)
    run.mark_running()
    cfg = RunConfig.model_validate(run.config)

    start_time = time.perf_counter()
    try:
        with collect_warnings() as warnings:
            outcome = CommandRunner().execute(cfg)
    except ParameterError as exc:
        logger.warning("run rejected", extra={"run_id": run_id, "error": type(exc).__name__, "detail": str(exc)})
        manifest = build_failure_manifest(cfg, exc, warnings, time.perf_counter() - start_time, ExitCode.VALIDATION)
        run.mark_failed(
            error_code=ErrorCodes.VALIDATION_ERROR,
            message=str(exc),
            exit_code=ExitCode.VALIDATION,
            manifest=manifest.model_dump(mode="json"),
        )
    except NumericalError as exc:
        logger.warning("run failed", extra={"run_id": run_id, "error": type(exc).__name__, "detail": str(exc)})
        manifest = build_failure_manifest(cfg, exc, warnings, time.perf_counter() - start_time, ExitCode.NUMERICAL)
        run.mark_failed(
            error_code=ErrorCodes.NUMERICAL_ERROR,
            message=str(exc),
            exit_code=ExitCode.NUMERICAL,
            manifest=manifest.model_dump(mode="json"),
        )
    except Exception as exc:
        logger.exception("Unexpected error executing run", extra={"run_id": run_id, "retries": self.request.retries})
        run.mark_failed(error_code=ErrorCodes.INTERNAL_ERROR, message=str(exc), exit_code=ExitCode.NUMERICAL)
        raise
    else:
        manifest = build_manifest(cfg, outcome, warnings)
        run.mark_finished(
            result=make_serializable(outcome.report.model_dump(mode="json")),  # type: ignore[arg-type]
            manifest=manifest.model_dump(mode="json"),
            passed=outcome.passed,
        )
    return str(run.status)
