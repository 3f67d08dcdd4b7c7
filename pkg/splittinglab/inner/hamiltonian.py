"""The inner Hamiltonian ``W + X Y + K(U, W, X, Y)`` and its invariance equation.

The fractional powers of U use one of two branches. ``UPPER`` cuts the plane
along the positive imaginary axis, with ``arg U`` in ``(-3pi/2, pi/2]``, and
serves the paths below the real axis. ``LOWER`` is its mirror image and serves
the conjugate pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Self

from numerics.precision import Precision, arithmetic_of

from .exceptions import BranchCutError, DenominatorError, InnerDomainError

# Smallest accepted |1 + dK/dW|.
DENOMINATOR_FLOOR = 1e-6


class PowerBranch(str, Enum):
    """Branch of ``U^(1/3)``."""

    UPPER = "upper"
    LOWER = "lower"

    @property
    def path_sign(self: Self) -> float:
        """Sign of ``Im U`` on the paths this branch serves."""
        return -1.0 if self is PowerBranch.UPPER else 1.0

    @property
    def conjugate(self: Self) -> PowerBranch:
        """The mirrored branch."""
        return PowerBranch.LOWER if self is PowerBranch.UPPER else PowerBranch.UPPER

    def __str__(self: Self) -> str:
        """Return string representation."""
        return self.value


class InnerKind(str, Enum):
    """Unstable solutions live on the left of the singularity, stable ones on the right."""

    UNSTABLE = "unstable"
    STABLE = "stable"

    @property
    def side(self: Self) -> float:
        """Sign of ``-Re U`` at the asymptotic end of the solution."""
        return 1.0 if self is InnerKind.UNSTABLE else -1.0

    def __str__(self: Self) -> str:
        """Return string representation."""
        return self.value


@dataclass(frozen=True)
class InnerState:
    """A point ``(U, W, X, Y)`` in inner coordinates."""

    U: Any
    W: Any
    X: Any
    Y: Any

    def __post_init__(self: InnerState) -> None:
        """Reject the origin, where the fractional powers have no branch."""
        if complex(self.U) == 0:
            msg = "inner time U must be nonzero"
            raise InnerDomainError(msg)

    @property
    def Z(self: InnerState) -> tuple[Any, Any, Any]:  # noqa: N802
        """The graph components ``(W, X, Y)``."""
        return (self.W, self.X, self.Y)

    def to_complex(self: InnerState) -> InnerState:
        """Round every component to a binary64 complex number."""
        return InnerState(complex(self.U), complex(self.W), complex(self.X), complex(self.Y))

    def conjugate_swap(self: InnerState) -> InnerState:
        """``(conj U, conj W, conj Y, conj X)``, the real-analytic symmetry of the equation."""
        return InnerState(self.U.conjugate(), self.W.conjugate(), self.Y.conjugate(), self.X.conjugate())


@dataclass(frozen=True)
class _Powers:
    inv: Any
    inv2: Any
    inv3: Any
    p23: Any
    m13: Any
    m23: Any
    m43: Any
    m53: Any
    m73: Any
    m83: Any


def branch_log(U: Any, branch: PowerBranch = PowerBranch.UPPER) -> Any:  # noqa: N803
    """Logarithm of U with the branch cut of ``branch``."""
    arith = arithmetic_of(U)
    z = arith.log(U if arith.precision is Precision.COMPENSATED else complex(U))
    c = complex(U)
    arg = math.atan2(c.imag, c.real)
    if branch is PowerBranch.UPPER and arg > 0.5 * math.pi:
        return z - arith.complex_scalar(0.0, arith.pi * 2.0)
    if branch is PowerBranch.LOWER and arg <= -0.5 * math.pi:
        return z + arith.complex_scalar(0.0, arith.pi * 2.0)
    return z


def cube_root(U: Any, branch: PowerBranch = PowerBranch.UPPER) -> Any:  # noqa: N803
    """``U^(1/3) = exp(log U / 3)`` on the chosen branch."""
    arith = arithmetic_of(U)
    return arith.exp(branch_log(U, branch) / 3.0)


def _powers(U: Any, branch: PowerBranch) -> _Powers:  # noqa: N803
    s = cube_root(U, branch)
    m13 = 1.0 / s
    m23 = m13 * m13
    m43 = m23 * m23
    inv = 1.0 / U
    inv2 = inv * inv
    return _Powers(
        inv=inv,
        inv2=inv2,
        inv3=inv2 * inv,
        p23=s * s,
        m13=m13,
        m23=m23,
        m43=m43,
        m53=m43 * m13,
        m73=m43 * inv,
        m83=m43 * m43,
    )


def _J(s: InnerState, p: _Powers) -> Any:  # noqa: N802
    W, X, Y = s.Z  # noqa: N806
    return (
        W * W * p.m23 * (4.0 / 9.0)
        - W * p.m43 * (16.0 / 27.0)
        + p.inv2 * (16.0 / 81.0)
        + (X + Y) * p.inv * (W - p.m23 * (2.0 / 3.0)) * (4.0 / 9.0)
        + (X - Y) * p.m23 * complex(0.0, -4.0 / 3.0)
        - (X * X + Y * Y) * p.m43 * (1.0 / 3.0)
        + X * Y * p.m43 * (10.0 / 9.0)
    )


def _root(j: Any) -> Any:
    one_plus = j + 1.0
    if complex(one_plus).real <= 0.0:
        msg = f"1 + J = {complex(one_plus)!r} lies on the branch cut of the square root"
        raise BranchCutError(msg)
    return arithmetic_of(one_plus).sqrt(one_plus)


def _p_minus_one(j: Any, r: Any) -> Any:
    # 1/sqrt(1+J) - 1 without cancellation.
    return -j / (r * (r + 1.0))


def calJ(s: InnerState, branch: PowerBranch = PowerBranch.UPPER) -> Any:  # noqa: N802
    """The function ``J(U, W, X, Y)`` under the square root of K."""
    return _J(s, _powers(s.U, branch))


def calK(s: InnerState, branch: PowerBranch = PowerBranch.UPPER) -> Any:  # noqa: N802
    """``K = -3/4 U^(2/3) W^2 - (1 / (3 U^(2/3))) (1/sqrt(1+J) - 1)``."""
    p = _powers(s.U, branch)
    j = _J(s, p)
    return s.W * s.W * p.p23 * -0.75 - p.m23 * _p_minus_one(j, _root(j)) * (1.0 / 3.0)


@dataclass(frozen=True)
class KPartials:
    """First partial derivatives of K."""

    dU: Any
    dW: Any
    dX: Any
    dY: Any


def calK_partials(s: InnerState, branch: PowerBranch = PowerBranch.UPPER) -> KPartials:  # noqa: N802
    """Closed-form ``(dK/dU, dK/dW, dK/dX, dK/dY)``."""
    W, X, Y = s.Z  # noqa: N806
    p = _powers(s.U, branch)
    j = _J(s, p)
    r = _root(j)
    inv_r = 1.0 / r
    q = inv_r * inv_r * inv_r * p.m23 * (1.0 / 6.0)

    mixed = p.inv * (W - p.m23 * (2.0 / 3.0)) * (4.0 / 9.0)
    tilt = p.m23 * complex(0.0, 4.0 / 3.0)
    j_w = W * p.m23 * (8.0 / 9.0) - p.m43 * (16.0 / 27.0) + (X + Y) * p.inv * (4.0 / 9.0)
    j_x = mixed - tilt - X * p.m43 * (2.0 / 3.0) + Y * p.m43 * (10.0 / 9.0)
    j_y = mixed + tilt - Y * p.m43 * (2.0 / 3.0) + X * p.m43 * (10.0 / 9.0)
    j_u = (
        W * W * p.m53 * (-8.0 / 27.0)
        + W * p.m73 * (64.0 / 81.0)
        - p.inv3 * (32.0 / 81.0)
        + (X + Y) * (p.m83 * (10.0 / 9.0) - W * p.inv2) * (4.0 / 9.0)
        + (X - Y) * p.m53 * complex(0.0, 8.0 / 9.0)
        + (X * X + Y * Y) * p.m73 * (4.0 / 9.0)
        - X * Y * p.m73 * (40.0 / 27.0)
    )
    return KPartials(
        dU=W * W * p.m13 * -0.5 + p.m53 * _p_minus_one(j, r) * (2.0 / 9.0) + q * j_u,
        dW=W * p.p23 * -1.5 + q * j_w,
        dX=q * j_x,
        dY=q * j_y,
    )


def inner_rhs(s: InnerState, branch: PowerBranch = PowerBranch.UPPER) -> tuple[Any, Any, Any]:
    """``dZ/dU = A Z + R[Z]`` with ``A = diag(0, i, -i)``.

    Written out, ``dW/dU = -K_U / (1 + K_W)``, ``dX/dU = i (X + K_Y) / (1 + K_W)``
    and ``dY/dU = -i (Y + K_X) / (1 + K_W)``.
    """
    k = calK_partials(s, branch)
    denominator = k.dW + 1.0
    if abs(complex(denominator)) < DENOMINATOR_FLOOR:
        msg = f"|1 + dK/dW| = {abs(complex(denominator)):.3e} at U={complex(s.U)!r}"
        raise DenominatorError(msg)
    return (
        -k.dU / denominator,
        (s.X + k.dY) * 1j / denominator,
        (s.Y + k.dX) * -1j / denominator,
    )


def remainder(s: InnerState, branch: PowerBranch = PowerBranch.UPPER) -> tuple[Any, Any, Any]:
    """The nonlinear part ``R[Z] = dZ/dU - A Z``."""
    dw, dx, dy = inner_rhs(s, branch)
    return (dw, dx - s.X * 1j, dy + s.Y * 1j)


def inner_hamiltonian(s: InnerState, branch: PowerBranch = PowerBranch.UPPER) -> Any:
    """``W + X Y + K``."""
    return s.W + s.X * s.Y + calK(s, branch)
