import math

import numpy as np
import pytest
from numerics.precision import Precision
from pendulum.constant_a import reference_A
from rpc3bp.lagrange import lagrange_points
from rpc3bp.params import MuParam
from splitting.branches import BranchSign, ManifoldKind, oriented, seed_branch
from splitting.config import Section, SectionKind, SplittingConfig, check_mu_floor
from splitting.distance import (
    normalized_constant,
    normalized_tof,
    reversibility_check,
    scaled_section_splitting,
    splitting_distance,
)
from splitting.exceptions import FitDesignError, MuFloorError, SectionRangeError, SeedOffsetError
from splitting.fit import fit_log_law, power_law_exponent
from splitting.invariance import invariance_residual
from splitting.sweep import WORKERS_ENV, SweepStatus, default_workers, run_sweep


class TestConfig:
    """Tests for splitting settings."""

    @pytest.mark.parametrize("epsilon", [1e-10, 1e-4])
    def test_seed_offset_range(self, epsilon):
        """Test seed offsets outside [1e-9, 1e-5] are rejected"""
        with pytest.raises(SeedOffsetError):
            SplittingConfig(epsilon=epsilon)

    def test_error_floor(self):
        """Test the floor follows the tolerance and the precision"""
        assert SplittingConfig(rel_tol=1e-12).error_floor == pytest.approx(1e-10)
        cfg = SplittingConfig(rel_tol=1e-24, abs_tol=1e-28, precision=Precision.COMPENSATED)
        assert cfg.error_floor == pytest.approx(1e-22)

    def test_horizon(self):
        """Test the time budget scales like mu^-1/2"""
        assert SplittingConfig().horizon(1e-2) == pytest.approx(600.0)

    @pytest.mark.parametrize("value", [0.0, 3.0, -2.9])
    def test_section_range(self, value):
        """Test section angles must lie inside the separatrix range"""
        with pytest.raises(SectionRangeError):
            Section(SectionKind.THETA, value).validate()

    def test_mirrored(self):
        """Test the reflected section"""
        assert Section(SectionKind.THETA, 1.0).mirrored() == Section(SectionKind.THETA, -1.0)

    def test_mu_floor(self):
        """Test mass ratios below the floor are rejected"""
        with pytest.raises(MuFloorError):
            check_mu_floor(1e-5)
        check_mu_floor(3e-5)


class TestSeeds:
    """Tests for manifold seeds."""

    @pytest.mark.parametrize(
        ("kind", "sign"),
        [
            (ManifoldKind.UNSTABLE, BranchSign.PLUS),
            (ManifoldKind.STABLE, BranchSign.PLUS),
            (ManifoldKind.STABLE, BranchSign.MINUS),
        ],
    )
    def test_seed_geometry(self, mu_param, kind, sign):
        """Test the seed sits epsilon away from L3 on the requested side"""
        l3 = lagrange_points(mu_param).l3
        branch = seed_branch(mu_param, kind, sign, 1e-7, l3=l3)
        step = np.subtract(branch.seed_state.to_binary64(), l3.state.to_binary64())
        assert np.linalg.norm(step) == pytest.approx(1e-7, rel=1e-6)
        assert np.sign(step[1]) == sign.factor
        assert branch.hyperbolic_rate == l3.linearization.hyperbolic_rate

    def test_directions_follow_the_spectrum(self, mu_param):
        """Test unstable seeds use the positive eigenvalue and stable ones the negative"""
        lin = lagrange_points(mu_param).l3.linearization
        unstable = seed_branch(mu_param, ManifoldKind.UNSTABLE, BranchSign.PLUS)
        assert lin.jacobian @ unstable.direction == pytest.approx(lin.hyperbolic_rate * unstable.direction, abs=1e-10)
        stable = seed_branch(mu_param, ManifoldKind.STABLE, BranchSign.PLUS)
        assert lin.jacobian @ stable.direction == pytest.approx(-lin.hyperbolic_rate * stable.direction, abs=1e-10)

    def test_oriented(self):
        """Test orientation by the q2 component"""
        v = np.array([0.0, -2.0, 0.0, 0.0])
        assert oriented(v, BranchSign.PLUS) == pytest.approx([0.0, 1.0, 0.0, 0.0])
        assert oriented(v, BranchSign.MINUS) == pytest.approx([0.0, -1.0, 0.0, 0.0])

    def test_invalid_offset(self, mu_param):
        """Test the seed offset range"""
        with pytest.raises(SeedOffsetError):
            seed_branch(mu_param, ManifoldKind.UNSTABLE, BranchSign.PLUS, epsilon=1e-3)

    def test_sign_aliases(self):
        """Test branch sign parsing"""
        assert BranchSign.from_str("plus") is BranchSign.PLUS
        with pytest.raises(ValueError, match="Invalid branch sign"):
            BranchSign.from_str("up")


class TestNormalization:
    """Tests for the normalized diagnostics."""

    def test_normalized_constant(self):
        """Test the exponential and the prefactor are divided out"""
        mu, a = 1e-2, 0.2
        d = 3.0 * mu ** (1.0 / 3.0) * math.exp(-a / math.sqrt(mu))
        assert normalized_constant(d, mu, 1.0 / 3.0, a) == pytest.approx(3.0)

    def test_normalized_tof(self):
        """Test the logarithmic escape time is removed"""
        assert normalized_tof(-20.0, 1e-7, 0.5) == pytest.approx(20.0 + math.log(1e-7) / 0.5)


class TestFit:
    """Tests for the asymptotic fit."""

    def test_recovers_synthetic_law(self):
        """Test an exact law is recovered"""
        mus = np.geomspace(1e-4, 1e-2, 6)
        a_ref = reference_A()
        distances = 2.0 * mus ** (1.0 / 3.0) * np.exp(-a_ref / np.sqrt(mus))
        fit = fit_log_law(mus, distances)
        assert fit.A == pytest.approx(a_ref, rel=1e-9)
        assert fit.c == pytest.approx(2.0, rel=1e-9)
        assert fit.relative_A_error < 1e-9
        assert fit.c0 == pytest.approx(2.0, rel=1e-9)
        assert fit.c1 == pytest.approx(0.0, abs=1e-8)
        assert fit.decades == pytest.approx(2.0)
        assert len(fit.residuals) == len(mus)
        assert max(abs(r) for r in fit.residuals) < 1e-8

    @pytest.mark.parametrize(
        "mus",
        [[1e-3, 2e-3, 5e-3], [1e-3, 2e-3, 3e-3, 4e-3, 5e-3]],
        ids=["too-few", "too-narrow"],
    )
    def test_design(self, mus):
        """Test small or narrow grids are rejected"""
        with pytest.raises(FitDesignError):
            fit_log_law(mus, [1e-5] * len(mus))

    def test_power_law(self):
        """Test the log-log slope"""
        xs = [1.0, 2.0, 4.0, 8.0]
        assert power_law_exponent(xs, [x**-1.5 for x in xs]) == pytest.approx(-1.5)


class TestSweep:
    """Tests for mass-ratio sweeps."""

    def test_default_workers(self, monkeypatch):
        """Test the worker count comes from the environment"""
        monkeypatch.delenv(WORKERS_ENV, raising=False)
        assert default_workers() == 1
        monkeypatch.setenv(WORKERS_ENV, "4")
        assert default_workers() == 4
        monkeypatch.setenv(WORKERS_ENV, "many")
        assert default_workers() == 1

    def test_failures_are_recorded(self):
        """Test failing mass ratios keep their place and the fit is skipped"""
        result = run_sweep([2e-5, 1e-5], workers=1, fit=True)
        assert [e.mu for e in result.entries] == [2e-5, 1e-5]
        assert all(e.status is SweepStatus.ERROR for e in result.entries)
        assert {e.error_code for e in result.failed} == {"MuFloorError"}
        assert result.fit is None
        assert "at least" in result.fit_error

    @pytest.mark.slow
    def test_sweep_mixed(self):
        """Test a sweep with one good and one rejected mass ratio"""
        result = run_sweep([1e-2, 1e-5], workers=1)
        assert [e.status for e in result.entries] == [SweepStatus.OK, SweepStatus.ERROR]
        assert result.reports[0].distance > 0
        assert result.reports[0].unstable is None


@pytest.mark.slow
class TestSplitting:
    """Tests for manifold splitting at a moderate mass ratio."""

    def test_theta_section(self):
        """Test the splitting distance on the theta section"""
        report = splitting_distance(MuParam(1e-2))
        assert set(report.components) == {"delta_r", "delta_R", "delta_G"}
        assert report.distance == pytest.approx(math.sqrt(sum(c * c for c in report.components.values())))
        assert report.distance > report.rel_tol * 100
        assert report.energy_mismatch < 1e-10
        assert report.extras["r_unstable"] > 1.0
        assert report.tof_unstable > 0 > report.tof_stable

    def test_lambda_section(self):
        """Test the x and y differences have equal modulus on the real slice"""
        report = scaled_section_splitting(MuParam(1e-2))
        assert report.components["delta_y"] == pytest.approx(report.components["delta_x"], rel=1e-13)
        assert report.distance == report.components["delta_x"]
        assert report.energy_mismatch < 1e-10

    def test_reversibility(self):
        """Test the reflected unstable crossing lands on the stable minus branch"""
        assert reversibility_check(MuParam(1e-2)).distance < 1e-8

    def test_invariance(self):
        """Test the unstable branch solves the outer invariance system"""
        m = MuParam(1e-3)
        result = invariance_residual(seed_branch(m, ManifoldKind.UNSTABLE, BranchSign.PLUS))
        assert result.n_points >= 5
        assert result.residual <= 1e-6

    def test_invariance_tolerance_refinement(self):
        """Test the invariance residual shrinks when the tolerance is tightened"""
        branch = seed_branch(MuParam(1e-3), ManifoldKind.UNSTABLE, BranchSign.PLUS)
        coarse = invariance_residual(branch, cfg=SplittingConfig(rel_tol=1e-9, abs_tol=1e-12))
        fine = invariance_residual(branch, cfg=SplittingConfig(rel_tol=1e-10, abs_tol=1e-13))
        assert coarse.residual >= 5.0 * fine.residual

    def test_invariance_w_scaling(self):
        """Test the w component of the branch decays like delta squared"""
        params = [MuParam(mu) for mu in (1e-2, 3e-3, 1e-3)]
        max_w = [invariance_residual(seed_branch(m, ManifoldKind.UNSTABLE, BranchSign.PLUS)).max_abs_w for m in params]
        assert power_law_exponent([m.delta for m in params], max_w) >= 1.7

    def test_seed_invariance(self):
        """Test halving or doubling the seed offset leaves the splitting unchanged"""
        m = MuParam(1e-3)
        reports = {eps: splitting_distance(m, cfg=SplittingConfig(epsilon=eps)) for eps in (5e-8, 1e-7, 2e-7)}
        base = reports[1e-7]
        rate = lagrange_points(m).l3.linearization.hyperbolic_rate
        for eps in (5e-8, 2e-7):
            report = reports[eps]
            assert report.distance == pytest.approx(base.distance, rel=1e-3)
            assert report.arclength_tof_unstable == pytest.approx(base.arclength_tof_unstable, abs=1e-4)
            assert report.arclength_tof_stable == pytest.approx(base.arclength_tof_stable, abs=1e-4)
            shift = math.log(1e-7 / eps) / rate
            assert report.tof_unstable - base.tof_unstable == pytest.approx(shift, abs=1e-3)

    def test_precision_cross_check(self):
        """Test binary64 and double-word runs agree on the splitting"""
        m = MuParam(1e-3)
        native = splitting_distance(m)
        compensated = splitting_distance(m, cfg=SplittingConfig(precision=Precision.COMPENSATED))
        assert compensated.distance == pytest.approx(native.distance, rel=1e-6)
