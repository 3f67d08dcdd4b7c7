"""Models for the splitting lab."""

from typing import Any

from django.db import models
from django.utils import timezone

from .constants import CommandName, RunStatus


class ComputationRun(models.Model):
    """A run queued through the API, with its report and manifest once finished."""

    command = models.CharField(max_length=32, choices=CommandName.choices())
    config = models.JSONField(default=dict)
    status = models.CharField(
        max_length=20,
        choices=RunStatus.choices(),
        default=RunStatus.QUEUED,
    )
    created_at = models.DateTimeField(auto_now_add=True)
    started_at = models.DateTimeField(null=True, blank=True)
    finished_at = models.DateTimeField(null=True, blank=True)
    wall_time = models.FloatField(null=True, blank=True)
    exit_code = models.IntegerField(null=True, blank=True)
    error_code = models.CharField(max_length=64, default="", blank=True)
    error_message = models.TextField(default="", blank=True)

    result = models.JSONField(null=True, blank=True)
    manifest = models.JSONField(null=True, blank=True)

    class Meta:
        ordering = ("-created_at",)

    def __str__(self: "ComputationRun") -> str:
        """Return a string representation of the run."""
        return f"{self.command} #{self.pk} ({self.status})"

    def mark_running(self: "ComputationRun") -> None:
        """Record the start of execution."""
        self.status = RunStatus.RUNNING
        self.started_at = timezone.now()
        self.save(update_fields=["status", "started_at"])

    def mark_finished(
        self: "ComputationRun",
        *,
        result: dict[str, Any],
        manifest: dict[str, Any],
        passed: bool,
    ) -> None:
        """Store the report and manifest of a completed computation."""
        self.status = RunStatus.SUCCEEDED if passed else RunStatus.CHECK_FAILED
        self.result = result
        self.manifest = manifest
        self.wall_time = manifest.get("wall_time")
        self.exit_code = manifest.get("exit_code")
        self.finished_at = timezone.now()
        self.save()

    def mark_failed(
        self: "ComputationRun",
        *,
        error_code: str,
        message: str,
        exit_code: int,
        manifest: dict[str, Any] | None = None,
    ) -> None:
        """Store the error of a computation that raised, with its manifest when there is one."""
        self.status = RunStatus.FAILED
        self.manifest = manifest
        self.error_code = error_code
        self.error_message = message
        self.exit_code = exit_code
        self.finished_at = timezone.now()
        self.save()
