import json
from io import StringIO

import pytest
from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from lab.constants import CommandName, ExitCode, OutputFormat
from lab.exceptions import GridSpecError, RunConfigError
from lab.reporting import MANIFEST_SUFFIX, make_serializable, render_table
from lab.runner import CommandRunner, Table
from lab.schemas import REPORT_SCHEMAS, RunConfig, parse_mu_grid
from lab.services import RunService
from pendulum.constant_a import PUBLISHED_A
from pydantic import ValidationError
from splitting.exceptions import SplittingFloorError


def run_command(name: str, **options: object) -> tuple[str, str]:
    out, err = StringIO(), StringIO()
    call_command(name, stdout=out, stderr=err, **options)
    return out.getvalue(), err.getvalue()


class TestMuGrid:
    """Tests for mass-ratio grid parsing."""

    def test_log_grid(self):
        """Test a logarithmic grid hits both ends"""
        grid = parse_mu_grid("1e-3:2e-2:log:8")
        assert len(grid) == 8
        assert grid[0] == pytest.approx(1e-3)
        assert grid[-1] == pytest.approx(2e-2)
        assert grid[1] / grid[0] == pytest.approx(grid[2] / grid[1])

    def test_list(self):
        """Test a comma-separated list"""
        assert parse_mu_grid("1e-3, 2e-3,5e-3") == [1e-3, 2e-3, 5e-3]

    @pytest.mark.parametrize(
        "spec",
        ["1e-3:1e-2:cubic:4", "2e-3,1e-3", "0:1e-2:lin:3", "a,b", "1e-3:1e-2:log", ""],
        ids=["spacing", "unsorted", "zero", "text", "short", "empty"],
    )
    def test_invalid(self, spec):
        """Test malformed grids are rejected"""
        with pytest.raises(GridSpecError):
            parse_mu_grid(spec)


class TestRunConfig:
    """Tests for run configuration validation."""

    def test_needs_mass_ratio(self):
        """Test commands at one mass ratio require it"""
        with pytest.raises(ValidationError):
            RunConfig(command=CommandName.LAGRANGE)
        with pytest.raises(RunConfigError, match="needs --mu"):
            RunService.build_config({"command": "splitting"})

    def test_grid_validated(self):
        """Test the grid is checked at configuration time"""
        with pytest.raises(RunConfigError, match="--mu-grid"):
            RunService.build_config({"command": "sweep", "mu_grid": "1e-2:1e-3:log:4"})

    def test_unwritable_output(self, tmp_path):
        """Test outputs in missing directories are rejected"""
        with pytest.raises(RunConfigError, match="--output"):
            RunService.build_config({"command": "check_coords", "output": str(tmp_path / "missing" / "out.json")})

    def test_mus(self):
        """Test the mass ratios of a run"""
        cfg = RunService.build_config({"command": "sweep", "mu_grid": "1e-3,2e-3"})
        assert cfg.mus() == [1e-3, 2e-3]
        assert RunService.build_config({"command": "lagrange", "mu": 1e-3}).mus() == [1e-3]

    def test_defaults(self):
        """Test the defaults of a run"""
        cfg = RunService.build_config({"command": "stokes"})
        assert cfg.precision is None
        assert cfg.rhos == [8.0, 12.0, 16.0]
        assert cfg.output_format is OutputFormat.JSON

    def test_invalid_seed_iterates(self):
        """Test only one or two Picard iterates are allowed"""
        with pytest.raises(RunConfigError, match="--seed-iterates"):
            RunService.build_config({"command": "stokes", "seed_iterates": 3})


class TestReporting:
    """Tests for report emission."""

    def test_make_serializable(self):
        """Test complex numbers and enums become JSON values"""
        data = make_serializable({"theta": 1.5 - 0.5j, "format": OutputFormat.CSV, "pair": (1, 2.5)})
        assert data == {"theta": {"real": 1.5, "imag": -0.5}, "format": "csv", "pair": [1, 2.5]}

    def test_render_table(self):
        """Test CSV output keeps the column order"""
        text = render_table(Table(("b", "a"), [{"a": 1.0, "b": 2.0}, {"a": 3.0, "b": None}]))
        lines = text.splitlines()
        assert lines[0] == "b,a"
        assert lines[1] == "2.0,1.0"
        assert len(lines) == 3

    def test_runner_outcome(self):
        """Test the runner collects checks and timing"""
        cfg = RunService.build_config({"command": "check_coords", "samples": 20, "seed": 3})
        outcome = CommandRunner().execute(cfg)
        assert outcome.passed
        assert outcome.failed_checks == []
        assert outcome.wall_time > 0
        assert outcome.table.columns == ("name", "worst", "threshold", "passed", "detail")


class TestCommands:
    """Tests for the management commands."""

    def test_lagrange(self):
        """Test the Lagrange report and its manifest"""
        out, err = run_command("lagrange", mu=1e-3)
        report = json.loads(out)
        assert report["mu"] == 1e-3
        assert [p["label"] for p in report["points"]] == ["L1", "L2", "L3", "L4", "L5"]
        assert report["l3_gradient_norm"] < 1e-11
        manifest = json.loads(err)
        assert manifest["exit_code"] == ExitCode.OK
        assert manifest["checks"] == {"l3_gradient": True}
        assert "numpy" in manifest["versions"]

    def test_lagrange_is_deterministic(self):
        """Test repeated runs print the same report"""
        assert run_command("lagrange", mu=1e-3)[0] == run_command("lagrange", mu=1e-3)[0]

    def test_invalid_mass_ratio(self):
        """Test a validation error exits with code 1"""
        with pytest.raises(CommandError) as exc_info:
            run_command("lagrange", mu=0.6)
        assert exc_info.value.returncode == ExitCode.VALIDATION

    def test_failed_run_manifest(self):
        """Test a rejected mass ratio still leaves a manifest with its error"""
        out, err = StringIO(), StringIO()
        with pytest.raises(CommandError) as exc_info:
            call_command("splitting", mu=1e-5, stdout=out, stderr=err)
        assert exc_info.value.returncode == ExitCode.VALIDATION
        assert out.getvalue() == ""
        manifest = json.loads(err.getvalue())
        assert manifest["exit_code"] == ExitCode.VALIDATION
        assert manifest["diagnostics"]["error_code"] == "MuFloorError"
        assert manifest["config"]["mu"] == 1e-5

    def test_numerical_failure_manifest(self, monkeypatch):
        """Test a numerical failure exits with code 2 and records the error"""

        def fail(self, cfg):
            raise SplittingFloorError("below the floor")

        monkeypatch.setattr(CommandRunner, "lagrange", fail)
        err = StringIO()
        with pytest.raises(CommandError) as exc_info:
            call_command("lagrange", mu=1e-3, stdout=StringIO(), stderr=err)
        assert exc_info.value.returncode == ExitCode.NUMERICAL
        manifest = json.loads(err.getvalue())
        assert manifest["exit_code"] == ExitCode.NUMERICAL
        assert manifest["diagnostics"] == {"error_code": "SplittingFloorError", "error": "below the floor"}

    def test_sweep_columns(self):
        """Test the sweep CSV columns and the exit code of a sweep with failed points"""
        out, err = StringIO(), StringIO()
        with pytest.raises(CommandError) as exc_info:
            call_command("sweep", mu_grid="1e-5,2e-5", workers=1, stdout=out, stderr=err)
        assert exc_info.value.returncode == ExitCode.NUMERICAL
        lines = out.getvalue().splitlines()
        assert lines[0] == "mu,theta_star,d,C,delta_r,delta_R,delta_G,tof_u,tof_s,precision,status,error_code"
        assert len(lines) == 3
        assert lines[1].endswith(",native,error,MuFloorError")
        manifest = json.loads(err.getvalue())
        assert manifest["exit_code"] == ExitCode.NUMERICAL
        assert manifest["checks"] == {"all_points": False}

    def test_constant_a(self):
        """Test a single quadrature of A"""
        out, _ = run_command("constant_a", method="x-integral")
        report = json.loads(out)
        assert len(report["results"]) == 1
        assert report["results"][0]["value"] == pytest.approx(PUBLISHED_A, abs=1e-6)
        assert report["agreement"] is None

    def test_constant_a_csv(self):
        """Test the CSV columns of the constant A report"""
        out, _ = run_command("constant_a", output_format="csv")
        lines = out.splitlines()
        assert lines[0] == "method,value,error_estimate,levels,evaluations,deviation_from_published"
        assert len(lines) == 3

    def test_separatrix(self):
        """Test separatrix samples default to CSV"""
        out, _ = run_command("separatrix", span=2.0, step=0.5)
        lines = out.splitlines()
        assert lines[0] == "t,lambda,Lambda"
        assert len(lines) == 10

    def test_check_coords(self):
        """Test the property checks pass"""
        out, _ = run_command("check_coords", samples=50, seed=1)
        report = json.loads(out)
        assert report["passed"]
        assert report["seed"] == 1

    def test_output_file(self, tmp_path):
        """Test the report and the manifest are written side by side"""
        target = tmp_path / "points.json"
        out, err = run_command("lagrange", mu=1e-3, output=str(target))
        assert out == ""
        assert err == ""
        assert json.loads(target.read_text())["mu"] == 1e-3
        manifest = json.loads((tmp_path / f"points.json{MANIFEST_SUFFIX}").read_text())
        assert manifest["command"] == "lagrange"

    def test_export_schemas(self, tmp_path):
        """Test one schema file per report"""
        out, _ = run_command("export_schemas", directory=str(tmp_path))
        assert f"{len(REPORT_SCHEMAS)} schemas" in out
        schema = json.loads((tmp_path / "lagrange.schema.json").read_text())
        assert "points" in schema["properties"]

    @pytest.mark.parametrize("name", sorted(REPORT_SCHEMAS))
    def test_committed_schemas_match(self, name):
        """Test the committed schema files follow the report models"""
        committed = json.loads((settings.SCHEMA_DIR / f"{name}.schema.json").read_text(encoding="utf-8"))
        live = REPORT_SCHEMAS[name].model_json_schema()
        assert committed["title"] == live["title"]
        assert committed["required"] == live["required"]
        assert set(committed["properties"]) == set(live["properties"])
        assert set(committed.get("$defs", {})) == set(live.get("$defs", {}))
        for key, definition in live.get("$defs", {}).items():
            assert set(committed["$defs"][key].get("properties", {})) == set(definition.get("properties", {}))
            assert committed["$defs"][key].get("enum") == definition.get("enum")

    def test_report_follows_committed_schema(self):
        """Test a printed report carries the fields its committed schema requires"""
        out, _ = run_command("lagrange", mu=1e-3)
        schema = json.loads((settings.SCHEMA_DIR / "lagrange.schema.json").read_text(encoding="utf-8"))
        report = json.loads(out)
        assert set(schema["required"]) <= set(report)
        assert set(report) <= set(schema["properties"])


@pytest.mark.slow
class TestLongCommands:
    """Tests for the commands that integrate manifolds or inner solutions."""

    def test_stokes_single_height(self):
        """Test the Stokes command at one path height"""
        out, err = run_command("stokes", rhos=[12.0], re_max=40.0)
        report = json.loads(out)
        assert 1.55 <= report["abs_theta"] <= 1.71
        assert [r["rho"] for r in report["per_rho"]] == [12.0]
        assert json.loads(err)["exit_code"] == ExitCode.OK

    def test_sweep_fit(self):
        """Test a sweep recovers the exponent constant within three percent"""
        out, err = run_command(
            "sweep",
            mu_grid="1e-3:2e-2:log:8",
            theta_star=1.5707963,
            fit=True,
            workers=1,
            output_format="json",
        )
        report = json.loads(out)
        assert all(e["status"] == "ok" for e in report["entries"])
        assert report["fit"]["relative_A_error"] <= 0.03
        assert len(report["fit"]["residuals"]) == 8
        assert json.loads(err)["checks"] == {"all_points": True, "fit": True}
