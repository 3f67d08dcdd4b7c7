"""Admin for the lab app."""

from django.contrib import admin

from .models import ComputationRun


@admin.register(ComputationRun)
class ComputationRunAdmin(admin.ModelAdmin):
    """Admin for the ComputationRun model."""

    list_display = (
        "id",
        "command",
        "status",
        "created_at",
        "wall_time",
        "exit_code",
    )
    list_filter = ("command", "status")
    search_fields = ("error_code", "error_message")
    readonly_fields = (
        "wall_time",
        "exit_code",
        "error_code",
        "error_message",
        "result",
        "manifest",
    )
