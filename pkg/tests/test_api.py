import pytest
from django.test import Client
from lab.constants import CommandName, ErrorCodes, RunStatus

pytestmark = [pytest.mark.django_db]


class TestRunAPI:
    """Tests for the run API."""

    def test_run_success(self, api_client: Client):
        """Test a queued run executes and its report can be fetched"""
        response = api_client.post("/api/runs", {"command": "lagrange", "mu": 1e-3}, content_type="application/json")

        assert response.status_code == 201
        data = response.json()
        assert data["status"] == RunStatus.SUCCEEDED
        assert data["message"] == "Run queued successfully"

        run = api_client.get(f"/api/runs/{data['run_id']}").json()
        assert run["command"] == "lagrange"
        assert run["exit_code"] == 0
        assert run["result"]["mu"] == 1e-3
        assert len(run["result"]["points"]) == 5
        assert run["manifest"]["checks"] == {"l3_gradient": True}

    def test_domain_error(self, api_client: Client):
        """Test a mass ratio outside the range fails the run with exit code 1"""
        response = api_client.post("/api/runs", {"command": "lagrange", "mu": 0.6}, content_type="application/json")

        assert response.status_code == 201
        run = api_client.get(f"/api/runs/{response.json()['run_id']}").json()
        assert run["status"] == RunStatus.FAILED
        assert run["error_code"] == ErrorCodes.VALIDATION_ERROR
        assert run["exit_code"] == 1
        assert run["result"] is None
        assert run["manifest"]["exit_code"] == 1
        assert run["manifest"]["diagnostics"]["error_code"] == "MuRangeError"

    def test_invalid_config(self, api_client: Client):
        """Test a configuration without its mass ratio is rejected"""
        response = api_client.post("/api/runs", {"command": "splitting"}, content_type="application/json")

        assert response.status_code == 422

    def test_run_not_found(self, api_client: Client):
        """Test looking up a missing run"""
        response = api_client.get("/api/runs/9999")

        assert response.status_code == 404
        assert ErrorCodes.RUN_NOT_FOUND in response.json()["detail"]

    def test_list_commands(self, api_client: Client):
        """Test the command catalogue"""
        response = api_client.get("/api/commands")

        assert response.status_code == 200
        assert [c["name"] for c in response.json()] == [c.value for c in CommandName]
