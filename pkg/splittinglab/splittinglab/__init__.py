"""Initialization for the L3 splitting lab."""

from .celery import app as celery_app

__all__ = ("celery_app",)
