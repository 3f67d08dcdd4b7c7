import math
from fractions import Fraction

import numpy as np
import pytest
from numerics.exceptions import EventNotFoundError, IntegratorConfigError, ParameterError
from numerics.integrator import Direction, EventSpec, IntegratorConfig, integrate, integrate_fixed, integrate_to_event
from numerics.precision import DoubleWord, DoubleWordComplex, Precision, arithmetic_of, get_arithmetic, two_sum
from numerics.quadrature import QuadratureSpec, half_line_quadrature, tanh_sinh_quadrature
from numerics.roots import find_root
from numerics.tableaus import DOP853, DOPRI5, materialize, weights_as_array


def oscillator(t: float, y: np.ndarray) -> np.ndarray:
    return np.array([y[1], -y[0]])


def rotation(t: float, y: np.ndarray) -> np.ndarray:
    return np.array([-y[1], y[0]])


class TestDoubleWord:
    """Tests for the compensated scalar."""

    def test_two_sum_is_exact(self):
        """Test that the rounding error of a sum is recovered"""
        s, e = two_sum(1.0, 1e-20)
        assert s == 1.0
        assert e == 1e-20

    def test_low_word_survives_addition(self):
        """Test that a tiny addend is carried in the low word"""
        x = DoubleWord(1.0) + 1e-20
        assert float(x) == 1.0
        assert float(x - 1.0) == pytest.approx(1e-20, rel=1e-15)

    def test_decimal_parsing(self):
        """Test that 0.1 is held to about 32 digits"""
        x = DoubleWord.from_string("0.1")
        assert abs(x.to_fraction() - Fraction(1, 10)) < Fraction(1, 10**31)

    def test_sqrt(self):
        """Test the Newton-corrected square root"""
        s = DoubleWord(2.0).sqrt()
        assert abs(float(s * s - 2.0)) < 1e-29

    def test_complex_companion(self):
        """Test complex multiplication against binary64"""
        z = DoubleWordComplex(1.5, -0.5) * DoubleWordComplex(0.25, 2.0)
        assert complex(z) == pytest.approx(complex(1.5, -0.5) * complex(0.25, 2.0), rel=1e-15)


class TestArithmetic:
    """Tests for the precision back ends."""

    def test_epsilons(self):
        """Test the unit roundoff of each mode"""
        assert get_arithmetic(Precision.NATIVE).epsilon == pytest.approx(2.0**-52)
        assert get_arithmetic(Precision.COMPENSATED).epsilon == 2.0**-104

    def test_string_modes(self):
        """Test selecting a back end by name"""
        assert get_arithmetic("compensated").precision is Precision.COMPENSATED

    def test_invalid_mode(self):
        """Test that an unknown mode is rejected"""
        with pytest.raises(ValueError, match="not a valid Precision"):
            Precision.from_str("quad")

    def test_arithmetic_of_detects_double_words(self):
        """Test back-end detection from values"""
        assert arithmetic_of(1.0, 2.0).precision is Precision.NATIVE
        assert arithmetic_of(1.0, DoubleWord(2.0)).precision is Precision.COMPENSATED

    def test_compensated_pi(self):
        """Test pi in double-word precision"""
        pi = get_arithmetic(Precision.COMPENSATED).pi
        assert pi.hi == math.pi
        assert pi.lo == pytest.approx(1.2246467991473532e-16, rel=1e-12)


class TestIntegratorConfig:
    """Tests for integrator configuration validation."""

    @pytest.mark.parametrize(
        "changes",
        [{"rel_tol": 0.0}, {"abs_tol": -1.0}, {"max_step": 0.0}, {"method_order": 6}, {"max_steps": 0}, {"first_step": -1.0}],
    )
    def test_invalid_values(self, changes):
        """Test that inconsistent settings are rejected"""
        with pytest.raises(IntegratorConfigError):
            IntegratorConfig(**changes)

    def test_with_overrides(self):
        """Test copying with replaced fields"""
        cfg = IntegratorConfig().with_overrides(method_order=5, dense_output=True)
        assert cfg.method_order == 5
        assert cfg.dense_output
        assert cfg.tableau.spec.order == 5


class TestTableaus:
    """Tests for the embedded Runge-Kutta coefficients."""

    @pytest.mark.parametrize("tableau", [DOP853, DOPRI5], ids=["dop853", "dopri5"])
    def test_row_sums(self, tableau):
        """Test every stage row sums to its node and the weights sum to one"""
        mat = materialize(tableau, Precision.NATIVE)
        size = tableau.n_stages + 1 + len(tableau.c_extra)
        nodes = [*mat.c, 1.0, *mat.c_extra]
        for i, node in enumerate(nodes):
            if i == tableau.n_stages:
                continue
            assert weights_as_array(mat.rows[i], size).sum() == pytest.approx(node, abs=1e-12)
        assert weights_as_array(mat.b, size).sum() == pytest.approx(1.0, abs=1e-14)

    def test_error_weights_sum_to_zero(self):
        """Test the embedded error estimate vanishes on constant slopes"""
        mat = materialize(DOPRI5, Precision.NATIVE)
        assert weights_as_array(mat.error_weights[0], DOPRI5.n_stages + 1).sum() == pytest.approx(0.0, abs=1e-15)


class TestIntegrate:
    """Tests for adaptive integration."""

    def test_oscillator_period(self):
        """Test that one period returns to the start"""
        result = integrate(oscillator, 0.0, 2 * math.pi, [1.0, 0.0])
        assert result.y == pytest.approx([1.0, 0.0], abs=1e-10)
        assert result.n_steps > 0

    def test_backward(self):
        """Test integrating backward in time"""
        result = integrate(lambda t, y: -y, 1.0, 0.0, [math.exp(-1.0)])
        assert result.t == 0.0
        assert result.y[0] == pytest.approx(1.0, rel=1e-11)

    def test_dense_output(self):
        """Test the continuous extension between steps"""
        result = integrate(oscillator, 0.0, 5.0, [1.0, 0.0], IntegratorConfig(dense_output=True))
        trajectory = result.trajectory
        assert trajectory is not None
        assert trajectory.t_min == 0.0
        assert trajectory.t_max == 5.0
        assert trajectory(1.234) == pytest.approx([math.cos(1.234), -math.sin(1.234)], abs=1e-9)
        assert trajectory.derivative(2.5) == pytest.approx([-math.sin(2.5), -math.cos(2.5)], abs=1e-7)

    def test_no_trajectory_without_dense_output(self):
        """Test that segments are dropped unless asked for"""
        assert integrate(oscillator, 0.0, 1.0, [1.0, 0.0]).trajectory is None

    def test_compensated_state(self):
        """Test integrating a double-word state"""
        cfg = IntegratorConfig(rel_tol=1e-20, abs_tol=1e-25, precision=Precision.COMPENSATED, method_order=8)
        result = integrate(lambda t, y: y, 0.0, 0.5, [1.0], cfg)
        assert isinstance(result.y[0], DoubleWord)
        assert float(result.y[0]) == pytest.approx(math.exp(0.5), rel=1e-15)


class TestIntegrateFixed:
    """Tests for the fixed-step driver."""

    def test_fifth_order_convergence(self):
        """Test that halving the step divides the error by about 2^5"""
        cfg = IntegratorConfig(method_order=5)
        errors = [abs(integrate_fixed(lambda t, y: y, 0.0, 1.0, [1.0], n, cfg)[0] - math.e) for n in (10, 20)]
        assert 20.0 < errors[0] / errors[1] < 50.0

    def test_invalid_step_count(self):
        """Test that zero steps are rejected"""
        with pytest.raises(IntegratorConfigError):
            integrate_fixed(oscillator, 0.0, 1.0, [1.0, 0.0], 0)


class TestIntegrateToEvent:
    """Tests for event location."""

    def test_first_decreasing_zero(self):
        """Test locating cos t = 0 from above"""
        ev = EventSpec(lambda t, y: y[0], direction=Direction.DECREASING, horizon=10.0)
        result = integrate_to_event(oscillator, 0.0, [1.0, 0.0], ev)
        assert result.t == pytest.approx(math.pi / 2, abs=1e-10)
        assert result.crossings == 1

    def test_second_crossing(self):
        """Test selecting the second admissible crossing"""
        ev = EventSpec(lambda t, y: y[0], which=2, horizon=10.0)
        result = integrate_to_event(oscillator, 0.0, [1.0, 0.0], ev)
        assert result.t == pytest.approx(3 * math.pi / 2, abs=1e-10)

    def test_backward_horizon(self):
        """Test a negative horizon integrates backward"""
        ev = EventSpec(lambda t, y: y[0], horizon=-10.0)
        result = integrate_to_event(oscillator, 0.0, [1.0, 0.0], ev)
        assert result.t == pytest.approx(-math.pi / 2, abs=1e-10)

    def test_no_crossing(self):
        """Test that a short horizon reports the missing event"""
        ev = EventSpec(lambda t, y: y[0], horizon=1.0)
        with pytest.raises(EventNotFoundError):
            integrate_to_event(oscillator, 0.0, [1.0, 0.0], ev)

    def test_wrap_jump_is_not_a_crossing(self):
        """Test an angle event skips its wrap-around and finds no crossing"""
        ev = EventSpec(
            lambda t, y: math.remainder(math.atan2(y[1], y[0]) + 0.5, 2 * math.pi),
            direction=Direction.DECREASING,
            horizon=10.0,
            max_jump=math.pi,
        )
        with pytest.raises(EventNotFoundError):
            integrate_to_event(rotation, 0.0, [1.0, 0.0], ev)

    def test_wrap_jump_keeps_genuine_crossing(self):
        """Test an angle event still finds its continuous crossing"""
        ev = EventSpec(
            lambda t, y: math.remainder(math.atan2(y[1], y[0]) + 1.0, 2 * math.pi),
            direction=Direction.DECREASING,
            horizon=10.0,
            max_jump=math.pi,
        )
        result = integrate_to_event(oscillator, 0.0, [1.0, 0.0], ev)
        assert result.t == pytest.approx(1.0, abs=1e-10)

    def test_invalid_spec(self):
        """Test event settings validation"""
        with pytest.raises(IntegratorConfigError):
            EventSpec(lambda t, y: y[0], which=0)
        with pytest.raises(IntegratorConfigError):
            EventSpec(lambda t, y: y[0], horizon=0.0)
        with pytest.raises(IntegratorConfigError):
            EventSpec(lambda t, y: y[0], max_jump=0.0)


class TestQuadrature:
    """Tests for tanh-sinh quadrature."""

    def test_inverse_sqrt_singularity(self):
        """Test an integrable endpoint singularity"""
        result = tanh_sinh_quadrature(lambda x: 1.0 / math.sqrt(x), QuadratureSpec(0.0, 1.0))
        assert result.value == pytest.approx(2.0, abs=1e-10)
        assert result.error <= 1e-12

    def test_half_line(self):
        """Test the exponential on the half line"""
        result = half_line_quadrature(lambda tau: math.exp(-tau))
        assert result.value == pytest.approx(1.0, abs=1e-11)

    def test_complex_integrand(self):
        """Test a complex-valued integrand"""
        result = half_line_quadrature(lambda tau: np.exp(-(1 + 1j) * tau))
        assert complex(result.value) == pytest.approx(0.5 - 0.5j, abs=1e-11)

    def test_invalid_interval(self):
        """Test interval validation"""
        with pytest.raises(ParameterError):
            QuadratureSpec(1.0, 0.0)
        with pytest.raises(ParameterError):
            QuadratureSpec(0.0, 1.0, max_levels=1)
        with pytest.raises(ParameterError):
            half_line_quadrature(math.exp, scale=0.0)


class TestFindRoot:
    """Tests for root finding."""

    def test_bracketed(self):
        """Test a bracketed search"""
        root = find_root(lambda x: x * x - 2.0, bracket=(0.0, 2.0), tol=1e-14)
        assert root == pytest.approx(math.sqrt(2.0), abs=1e-12)

    def test_newton(self):
        """Test an unbracketed Newton search"""
        root = find_root(lambda x: math.cos(x) - x, x0=0.5, fprime=lambda x: -math.sin(x) - 1.0)
        assert math.cos(root) == pytest.approx(root, abs=1e-12)

    def test_missing_derivative(self):
        """Test that Newton needs a derivative"""
        with pytest.raises(ParameterError):
            find_root(lambda x: x, x0=1.0)
