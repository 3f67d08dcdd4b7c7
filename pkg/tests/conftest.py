"""Fixtures for the tests."""

from collections.abc import Iterator

import numpy as np
import pytest
from django.test import Client
from pendulum.separatrix import SeparatrixHandle, separatrix_handle
from rpc3bp.params import MuParam
from splittinglab.celery import app as celery_app


@pytest.fixture
def mu_param() -> MuParam:
    """Fixture for the mass ratio of most manifold tests"""
    return MuParam(1e-3)


@pytest.fixture(params=[1e-2, 1e-3, 1e-4], ids=lambda mu: f"mu={mu:g}")
def mu_params(request: pytest.FixtureRequest) -> MuParam:
    """Fixture for a decade of mass ratios"""
    return MuParam(request.param)


@pytest.fixture(scope="session")
def separatrix_table() -> SeparatrixHandle:
    """Fixture for the shared separatrix table"""
    return separatrix_handle()


@pytest.fixture
def rng() -> np.random.Generator:
    """Fixture for a seeded random generator"""
    return np.random.default_rng(42)


@pytest.fixture
def eager_celery() -> Iterator[None]:
    """Run Celery tasks inline for the duration of a test"""
    previous = (celery_app.conf.task_always_eager, celery_app.conf.task_eager_propagates)
    celery_app.conf.task_always_eager = True
    celery_app.conf.task_eager_propagates = True
    yield
    celery_app.conf.task_always_eager, celery_app.conf.task_eager_propagates = previous


@pytest.fixture
def api_client(eager_celery: None) -> Client:
    """Fixture for the Django test client with eager Celery"""
    return Client()
