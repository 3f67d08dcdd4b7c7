import cmath
import math

import pytest
from inner.branches import DECAY_BOUND, InnerPath, plug_back_residual, solve_branch, weighted_norm
from inner.exceptions import BranchCutError, InnerDomainError
from inner.hamiltonian import (
    InnerKind,
    InnerState,
    PowerBranch,
    calJ,
    calK,
    calK_partials,
    cube_root,
    inner_hamiltonian,
    inner_rhs,
    remainder,
)
from inner.seeding import CONTRACTION_LIMIT, picard_seed
from inner.stokes import (
    RhoEstimate,
    combine_estimates,
    conjugate_mismatch,
    precision_for,
    relative_spread,
    stokes_constant,
)
from numerics.precision import Precision

POINT = InnerState(complex(-20.0, -8.0), 1e-3 + 2e-4j, 2e-3 + 1e-3j, 1e-3 - 2e-3j)


def _shifted(s: InnerState, component: str, h: complex) -> InnerState:
    values = {"U": s.U, "W": s.W, "X": s.X, "Y": s.Y}
    values[component] += h
    return InnerState(**values)


def _estimate(rho: float, theta: complex) -> RhoEstimate:
    return RhoEstimate(rho, theta, 0j, (), 0.0, Precision.NATIVE)


class TestPowers:
    """Tests for the fractional power branches."""

    @pytest.mark.parametrize(
        ("u", "branch", "expected"),
        [
            (1j, PowerBranch.UPPER, cmath.exp(1j * math.pi / 6)),
            (-1.0, PowerBranch.UPPER, cmath.exp(-1j * math.pi / 3)),
            (-1j, PowerBranch.UPPER, cmath.exp(-1j * math.pi / 6)),
            (-1.0, PowerBranch.LOWER, cmath.exp(1j * math.pi / 3)),
            (-1j, PowerBranch.LOWER, 1j),
        ],
    )
    def test_cube_root_branches(self, u, branch, expected):
        """Test the argument range of each branch"""
        assert complex(cube_root(complex(u), branch)) == pytest.approx(expected, abs=1e-15)

    def test_cube(self):
        """Test the cube root cubes back"""
        u = complex(-35.0, -12.0)
        for branch in PowerBranch:
            assert complex(cube_root(u, branch)) ** 3 == pytest.approx(u, rel=1e-14)

    def test_branch_names(self):
        """Test the path side and mirror of each branch"""
        assert PowerBranch.UPPER.path_sign == -1.0
        assert PowerBranch.UPPER.conjugate is PowerBranch.LOWER
        assert str(PowerBranch.LOWER) == "lower"


class TestInnerHamiltonian:
    """Tests for K, J and the inner vector field."""

    def test_j_on_the_zero_graph(self):
        """Test J reduces to 16 / (81 U^2) when W, X and Y vanish"""
        u = complex(-30.0, -8.0)
        assert complex(calJ(InnerState(u, 0j, 0j, 0j))) == pytest.approx(16.0 / (81.0 * u * u), rel=1e-13)

    def test_k_leading_order(self):
        """Test K behaves like J / (6 U^(2/3)) for small J"""
        s = InnerState(complex(-40.0, -10.0), 0j, 0j, 0j)
        j = complex(calJ(s))
        expected = j / (6.0 * complex(cube_root(s.U)) ** 2)
        assert complex(calK(s)) == pytest.approx(expected, rel=1e-3)

    @pytest.mark.parametrize("component", ["U", "W", "X", "Y"])
    def test_partials_match_finite_differences(self, component):
        """Test each closed-form partial against a central difference"""
        h = 1e-5
        exact = getattr(calK_partials(POINT), f"d{component}")
        numeric = (calK(_shifted(POINT, component, h)) - calK(_shifted(POINT, component, -h))) / (2 * h)
        assert complex(exact) == pytest.approx(complex(numeric), rel=1e-6, abs=1e-14)

    def test_conjugate_symmetry(self):
        """Test the mirrored branch gives the conjugate field with X and Y swapped"""
        dw, dx, dy = inner_rhs(POINT, PowerBranch.UPPER)
        mw, mx, my = inner_rhs(POINT.conjugate_swap(), PowerBranch.LOWER)
        assert complex(mw) == pytest.approx(complex(dw).conjugate(), rel=1e-12)
        assert complex(mx) == pytest.approx(complex(dy).conjugate(), rel=1e-12)
        assert complex(my) == pytest.approx(complex(dx).conjugate(), rel=1e-12)

    def test_remainder_removes_linear_part(self):
        """Test R[Z] is the field minus diag(0, i, -i) Z"""
        dw, dx, dy = inner_rhs(POINT)
        rw, rx, ry = remainder(POINT)
        assert complex(rw) == complex(dw)
        assert complex(rx) == pytest.approx(complex(dx) - 1j * POINT.X, abs=1e-18)
        assert complex(ry) == pytest.approx(complex(dy) + 1j * POINT.Y, abs=1e-18)

    def test_hamiltonian(self):
        """Test the inner Hamiltonian is W + XY + K"""
        expected = POINT.W + POINT.X * POINT.Y + complex(calK(POINT))
        assert complex(inner_hamiltonian(POINT)) == pytest.approx(expected, rel=1e-14)

    def test_branch_cut(self):
        """Test J on the cut of the square root is rejected"""
        with pytest.raises(BranchCutError):
            calK(InnerState(1.0 + 0j, 0j, 3.0 + 0j, -3.0 + 0j))

    def test_origin(self):
        """Test U = 0 is outside the domain"""
        with pytest.raises(InnerDomainError):
            InnerState(0j, 0j, 0j, 0j)


class TestPaths:
    """Tests for the integration paths."""

    def test_toward(self):
        """Test an unstable path runs left to right below the axis"""
        path = InnerPath.toward(InnerKind.UNSTABLE, 8.0, 60.0, 3.0)
        assert (path.re_start, path.re_end) == (-60.0, 3.0)
        assert path.point(1.0) == complex(1.0, -8.0)
        assert path.precision is Precision.NATIVE

    def test_stable_and_lower(self):
        """Test a stable path on the mirrored branch"""
        path = InnerPath.toward(InnerKind.STABLE, 8.0, 60.0, 3.0, PowerBranch.LOWER)
        assert (path.re_start, path.re_end) == (60.0, -3.0)
        assert path.im_level == 8.0

    def test_with_precision(self):
        """Test switching the working precision"""
        path = InnerPath.toward(InnerKind.UNSTABLE, 8.0, 60.0, 3.0).with_precision(Precision.COMPENSATED)
        assert path.precision is Precision.COMPENSATED

    @pytest.mark.parametrize(
        ("rho", "re_start", "re_end"),
        [(3.0, -60.0, 3.0), (8.0, -10.0, 3.0), (8.0, -40.0, -40.0)],
        ids=["low", "near", "empty"],
    )
    def test_invalid_paths(self, rho, re_start, re_end):
        """Test paths too close to the singularity or of zero length"""
        with pytest.raises(InnerDomainError):
            InnerPath(rho, re_start, re_end)

    def test_direction_mismatch(self):
        """Test a stable solution cannot start on the unstable side"""
        path = InnerPath.toward(InnerKind.UNSTABLE, 8.0, 60.0, 3.0)
        with pytest.raises(InnerDomainError):
            solve_branch(InnerKind.STABLE, path)

    @pytest.mark.parametrize("iterates", [0, 3])
    def test_seed_iterates(self, iterates):
        """Test only one or two Picard iterates are accepted"""
        with pytest.raises(InnerDomainError):
            picard_seed(InnerKind.UNSTABLE, complex(-60.0, -8.0), iterates=iterates)

    def test_weighted_norm(self):
        """Test the weighted size uses U^(8/3) for W and U^(4/3) for X and Y"""
        assert weighted_norm(InnerState(8j, 1e-3 + 0j, 1e-2 + 0j, 0j)) == pytest.approx(0.256)


class TestStokesCombination:
    """Tests for combining per-height estimates."""

    def test_relative_spread(self):
        """Test the largest pairwise deviation over the mean modulus"""
        assert relative_spread([1.0, 1.01]) == pytest.approx(0.01 / 1.005)
        assert relative_spread([1.6]) == 0.0

    def test_validity(self):
        """Test an estimate is valid only inside the threshold"""
        close = combine_estimates([_estimate(8.0, 1.6 + 0.1j), _estimate(12.0, 1.601 + 0.1j)])
        assert close.valid
        assert close.abs_theta == pytest.approx(abs(1.6005 + 0.1j))
        far = combine_estimates([_estimate(8.0, 1.6 + 0j), _estimate(12.0, 1.7 + 0j)])
        assert not far.valid

    def test_conjugate_mismatch(self):
        """Test the conjugate estimate is compared after conjugation"""
        upper = combine_estimates([_estimate(8.0, 1.2 + 1.1j)])
        lower = combine_estimates([_estimate(8.0, 1.2 - 1.1j)], branch=PowerBranch.LOWER)
        assert conjugate_mismatch(upper, lower) == pytest.approx(0.0)

    def test_precision_promotion(self):
        """Test tall paths are integrated in compensated precision"""
        assert precision_for(8.0, None) is Precision.NATIVE
        assert precision_for(8.0, Precision.COMPENSATED) is Precision.COMPENSATED
        assert precision_for(12.0, Precision.NATIVE) is Precision.COMPENSATED

    def test_no_heights(self):
        """Test at least one path height is required"""
        with pytest.raises(InnerDomainError):
            stokes_constant(())


@pytest.mark.slow
class TestInnerSolutions:
    """Tests for the integrated inner solutions and the Stokes constant."""

    def test_seed_settles(self):
        """Test the Picard seed contracts far from the singularity"""
        seed = picard_seed(InnerKind.UNSTABLE, complex(-60.0, -8.0))
        assert seed.iterates == 2
        assert seed.contraction < CONTRACTION_LIMIT
        assert weighted_norm(InnerState(seed.U, *seed.Z)) < DECAY_BOUND

    def test_solution_solves_the_equation(self):
        """Test the dense solution plugs back into the inner equation"""
        solution = solve_branch(InnerKind.UNSTABLE, InnerPath.toward(InnerKind.UNSTABLE, 8.0, 40.0, 3.0))
        assert solution.trajectory.t_min == -40.0
        assert solution.trajectory.t_max == 3.0
        assert solution.max_weighted <= DECAY_BOUND
        assert plug_back_residual(solution) <= 10.0 * solution.path.integrator.rel_tol

    def test_stokes_modulus(self):
        """Test the modulus of the Stokes constant at one height"""
        estimate = stokes_constant((8.0,), re_max=40.0)
        assert 1.55 <= estimate.abs_theta <= 1.71
        assert len(estimate.samples) == 5

    def test_conjugate_pipeline(self):
        """Test the mirrored pipeline returns the conjugate constant"""
        upper = stokes_constant((8.0,), re_max=40.0)
        lower = stokes_constant((8.0,), re_max=40.0, branch=PowerBranch.LOWER)
        assert conjugate_mismatch(upper, lower) < 0.01

    def test_rho_stability(self):
        """Test the constant agrees across the default heights"""
        estimate = stokes_constant((8.0, 12.0, 16.0), re_max=40.0)
        assert len(estimate.per_rho) == 3
        assert estimate.spread <= 0.01
        assert estimate.valid
        assert 1.55 <= estimate.abs_theta <= 1.71
