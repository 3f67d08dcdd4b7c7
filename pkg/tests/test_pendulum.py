import math

import pytest
from coords.exceptions import SeparatrixRangeError
from coords.states import ScaledState
from pendulum.constant_a import (
    PUBLISHED_A,
    ConstantAMethod,
    constant_A_lambda_integral,
    constant_A_x_integral,
    lambda_integrand,
    x_integrand,
)
from pendulum.exceptions import CollisionAngleError
from pendulum.hamiltonian_split import f_pend, h1_eval, scaled_hamiltonian, split_hamiltonian
from pendulum.potential import (
    LAMBDA_0,
    SADDLE_EIGENVALUE,
    PendulumState,
    hamiltonian_pend,
    potential_excess,
    potential_V,
    potential_V_prime,
    potential_V_second,
)
from pendulum.separatrix import SeparatrixSide, separatrix, separatrix_handle


class TestPotential:
    """Tests for the averaged potential."""

    def test_saddle(self):
        """Test the saddle sits on the separatrix level with curvature 7/8"""
        assert potential_V(0.0) == pytest.approx(-0.5)
        assert potential_V_prime(0.0) == 0.0
        assert potential_V_second(0.0) == pytest.approx(7.0 / 8.0)
        assert SADDLE_EIGENVALUE == pytest.approx(math.sqrt(21.0 / 8.0))

    def test_turning_point(self):
        """Test the turning point lies on the separatrix level"""
        assert potential_V(LAMBDA_0) == pytest.approx(-0.5, abs=1e-14)

    def test_excess(self):
        """Test the cancellation-free excess matches V + 1/2"""
        for lam in (0.3, 1.1, 2.5):
            assert potential_excess(lam) == pytest.approx(potential_V(lam) + 0.5, rel=1e-13)
        assert potential_excess(1e-6) == pytest.approx(7.0 / 16.0 * 1e-12, rel=1e-9)

    def test_derivative(self):
        """Test V' against a central difference"""
        h = 1e-6
        assert potential_V_prime(0.9) == pytest.approx((potential_V(0.9 + h) - potential_V(0.9 - h)) / (2 * h), abs=1e-8)

    def test_collision(self):
        """Test the collision angle is rejected"""
        with pytest.raises(CollisionAngleError):
            PendulumState(math.pi, 0.0)

    def test_energy(self):
        """Test the pendulum Hamiltonian"""
        assert hamiltonian_pend(PendulumState(0.0, 1.0)) == pytest.approx(-2.0)


class TestConstantA:
    """Tests for the two quadratures of A."""

    def test_x_integral(self):
        """Test the x-integral against the published value"""
        result = constant_A_x_integral()
        assert result.method is ConstantAMethod.X_INTEGRAL
        assert result.value == pytest.approx(PUBLISHED_A, abs=1e-6)
        assert result.error_estimate <= 1e-12

    def test_methods_agree(self):
        """Test both quadratures give the same constant"""
        assert constant_A_lambda_integral().value == pytest.approx(constant_A_x_integral().value, abs=1e-8)

    def test_offset_forms(self):
        """Test the integrands are positive and a loose target converges sooner"""
        assert x_integrand(0.1) > 0
        assert lambda_integrand(2.9) > 0
        coarse = constant_A_x_integral(tol=1e-6)
        assert coarse.value == pytest.approx(PUBLISHED_A, abs=2e-6)
        assert coarse.levels <= constant_A_x_integral().levels


class TestSeparatrix:
    """Tests for the separatrix table."""

    def test_energy_pinned(self, separatrix_table):
        """Test the table stays on the level -1/2"""
        assert separatrix_table.max_energy_error() < 1e-10
        for sample in separatrix_table.samples([-12.0, -3.0, 0.5, 7.0]):
            assert sample.energy == pytest.approx(-0.5, abs=1e-10)

    def test_turning_point(self, separatrix_table):
        """Test the separatrix turns at t = 0"""
        assert separatrix_table.lambda_h(0.0) == pytest.approx(LAMBDA_0, abs=1e-12)
        assert separatrix_table.Lambda_h(0.0) == pytest.approx(0.0, abs=1e-12)

    def test_halves(self, separatrix_table):
        """Test the action sign on each half and the time symmetry"""
        assert separatrix_table.Lambda_h(-2.0) < 0 < separatrix_table.Lambda_h(2.0)
        assert separatrix_table.lambda_h(-4.0) == pytest.approx(separatrix_table.lambda_h(4.0), abs=1e-10)

    def test_tails(self, separatrix_table):
        """Test the exponential approach to the saddle"""
        ratio = separatrix_table.lambda_h(19.0) / separatrix_table.lambda_h(18.0)
        assert ratio == pytest.approx(math.exp(-SADDLE_EIGENVALUE), rel=1e-12)
        assert separatrix_table.Lambda_h(25.0) == pytest.approx(SADDLE_EIGENVALUE / 3.0 * separatrix_table.lambda_h(25.0))

    def test_direct_integration(self, separatrix_table):
        """Test the table against a direct integration"""
        for t in (-1.5, 3.0):
            direct = separatrix(t)
            assert direct.lambda_h == pytest.approx(separatrix_table.lambda_h(t), abs=1e-10)
            assert direct.Lambda_h == pytest.approx(separatrix_table.Lambda_h(t), abs=1e-10)

    def test_invert(self, separatrix_table):
        """Test inversion on both halves"""
        u = separatrix_table.invert(1.2, SeparatrixSide.UNSTABLE)
        assert u < 0
        assert separatrix_table.lambda_h(u) == pytest.approx(1.2, abs=1e-13)
        assert separatrix_table.invert(1.2, SeparatrixSide.STABLE) == pytest.approx(-u, abs=1e-9)

    def test_short_span(self):
        """Test spans inside the tail match are rejected"""
        with pytest.raises(SeparatrixRangeError):
            separatrix_handle(span=10.0)


class TestHamiltonianSplit:
    """Tests for the split of the scaled Hamiltonian."""

    def test_f_pend(self):
        """Test the cubic remainder in closed form"""
        z = 0.3
        expected = -1.0 / (2.0 * (1.0 + z) ** 2) - (1.0 + z) + 1.5 + 1.5 * z * z
        assert f_pend(z) == pytest.approx(expected, rel=1e-12)
        assert f_pend(1e-3) == pytest.approx(2e-9, rel=1e-2)

    def test_split_is_exact(self, mu_param):
        """Test the pieces add up to the full scaled Hamiltonian"""
        ss = ScaledState(1.0, 0.2, 0.1 + 0.05j, 0.1 - 0.05j, mu_param.delta)
        split = split_hamiltonian(ss, mu_param)
        assert abs(split.residual) < 1e-9
        assert split.total == pytest.approx(scaled_hamiltonian(ss, mu_param))
        assert split.perturbation == pytest.approx(h1_eval(ss, mu_param))

