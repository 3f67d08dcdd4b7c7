"""Configuration for the lab app."""

from django.apps import AppConfig


class LabConfig(AppConfig):
    """Configuration for the lab app."""

    default_auto_field = "django.db.models.BigAutoField"
    name = "lab"
