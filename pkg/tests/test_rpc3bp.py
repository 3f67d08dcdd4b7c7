import math

import numpy as np
import pytest
from numerics.integrator import IntegratorConfig
from numerics.precision import DoubleWord, Precision, get_arithmetic
from rpc3bp.exceptions import MuRangeError, PrimaryCollisionError, SpectrumError
from rpc3bp.hamiltonian import flow, hamiltonian_h, involution_phi, jacobi_constant, jacobian, vector_field
from rpc3bp.lagrange import LagrangeLabel, lagrange_points
from rpc3bp.params import MuParam
from rpc3bp.states import CartesianState

STATE = CartesianState(0.4, 0.7, -0.6, 0.3)


class TestMuParam:
    """Tests for mass ratio validation."""

    @pytest.mark.parametrize("mu", [0.0, -1e-3, 0.6, math.nan])
    def test_out_of_range(self, mu):
        """Test that mass ratios outside (0, 1/2] are rejected"""
        with pytest.raises(MuRangeError):
            MuParam(mu)

    def test_equal_masses(self):
        """Test the upper end of the range"""
        assert MuParam(0.5).delta == pytest.approx(0.5**0.25)

    def test_compensated_delta(self):
        """Test the quarter root in double-word precision"""
        delta = MuParam(1e-4).delta_in(get_arithmetic(Precision.COMPENSATED))
        assert isinstance(delta, DoubleWord)
        assert float(delta) == pytest.approx(0.1, rel=1e-15)


class TestHamiltonian:
    """Tests for the rotating-frame Hamiltonian."""

    def test_jacobi_constant(self):
        """Test the Jacobi constant is minus twice the energy"""
        m = MuParam(1e-3)
        assert jacobi_constant(STATE, m) == pytest.approx(-2.0 * hamiltonian_h(STATE, m))

    def test_collision(self):
        """Test evaluation at a primary fails"""
        m = MuParam(1e-3)
        with pytest.raises(PrimaryCollisionError):
            hamiltonian_h(CartesianState(m.mu, 0.0, 0.0, 0.0), m)

    def test_jacobian_matches_finite_differences(self):
        """Test the Jacobian against central differences of the vector field"""
        m = MuParam(1e-2)
        exact = jacobian(STATE, m)
        h = 1e-6
        base = np.array(STATE.components)
        for k in range(4):
            shift = np.zeros(4)
            shift[k] = h
            plus = np.array(vector_field(CartesianState(*(base + shift)), m).components)
            minus = np.array(vector_field(CartesianState(*(base - shift)), m).components)
            assert exact[:, k] == pytest.approx((plus - minus) / (2 * h), abs=1e-7)

    def test_energy_conservation(self):
        """Test the flow preserves the energy"""
        m = MuParam(1e-3)
        end = flow(STATE, 3.0, m)
        assert float(hamiltonian_h(end, m)) == pytest.approx(float(hamiltonian_h(STATE, m)), abs=1e-12)

    def test_reversibility(self):
        """Test that the involution conjugates the forward and backward flows"""
        m = MuParam(1e-3)
        forward = flow(STATE, 1.5, m)
        back = flow(involution_phi(forward), 1.5, m)
        assert back.to_binary64() == pytest.approx(involution_phi(STATE).to_binary64(), abs=1e-10)

    @pytest.mark.slow
    def test_compensated_flow(self):
        """Test a double-word flow keeps the energy to far below binary64"""
        m = MuParam(1e-3)
        cfg = IntegratorConfig(rel_tol=1e-22, abs_tol=1e-26, precision=Precision.COMPENSATED)
        start = CartesianState(*(DoubleWord(c) for c in STATE.components))
        end = flow(start, 0.5, m, cfg)
        drift = hamiltonian_h(end, m) - hamiltonian_h(start, m)
        assert abs(float(drift)) < 1e-20


class TestLagrangePoints:
    """Tests for the equilibria and their spectra."""

    def test_l3_position(self, mu_params):
        """Test L3 against its small-mu expansion"""
        l3 = lagrange_points(mu_params).l3
        assert float(l3.state.q1) == pytest.approx(1.0 + 5.0 * mu_params.mu / 12.0, abs=mu_params.mu**2)
        assert l3.state.q2 == 0.0

    def test_collinear_ordering(self, mu_param):
        """Test the collinear points sit where their labels say"""
        points = lagrange_points(mu_param)
        assert mu_param.mu - 1 < float(points[LagrangeLabel.L1].state.q1) < mu_param.mu
        assert float(points["l2"].state.q1) < mu_param.mu - 1
        assert float(points.l3.state.q1) > mu_param.mu

    def test_all_are_equilibria(self, mu_param):
        """Test every gradient vanishes"""
        for point in lagrange_points(mu_param):
            assert point.gradient_norm < 1e-11

    def test_l3_spectrum(self, mu_params):
        """Test the saddle-centre rates of L3"""
        lin = lagrange_points(mu_params).l3.linearization
        assert lin.saddle_centre
        assert lin.hyperbolic_rate == pytest.approx(math.sqrt(21.0 * mu_params.mu / 8.0), rel=10 * mu_params.mu)
        assert lin.elliptic_frequency == pytest.approx(1.0 + 7.0 * mu_params.mu / 8.0, abs=10 * mu_params.mu**2)

    def test_eigenvectors(self, mu_param):
        """Test each eigenpair satisfies the eigen-equation"""
        lin = lagrange_points(mu_param).l3.linearization
        for k, lam in enumerate(lin.eigenvalues):
            v = lin.eigenvectors[:, k]
            assert np.linalg.norm(lin.jacobian @ v - lam * v) < 1e-10

    def test_equilateral_points_are_not_saddles(self, mu_param):
        """Test the triangular points expose no hyperbolic rate"""
        lin = lagrange_points(mu_param)[LagrangeLabel.L4].linearization
        assert not lin.saddle_centre
        with pytest.raises(SpectrumError):
            _ = lin.hyperbolic_rate

    def test_compensated_l3(self, mu_param):
        """Test L3 in double-word precision"""
        l3 = lagrange_points(mu_param, Precision.COMPENSATED).l3
        assert isinstance(l3.state.q1, DoubleWord)
        assert l3.gradient_norm < 1e-24
        native = lagrange_points(mu_param).l3
        assert float(l3.state.q1) == pytest.approx(float(native.state.q1), abs=1e-14)

    def test_label_lookup(self, mu_param):
        """Test that unknown labels are rejected"""
        with pytest.raises(ValueError, match="Invalid Lagrange point"):
            lagrange_points(mu_param)["L6"]
