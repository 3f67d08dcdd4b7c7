"""The constant A: imaginary part of the separatrix singularity.

Two independent quadratures give it. The x-integral

    A = int_0^a 2/(1-x) sqrt(x / (3 (x+1) (1 - 4x - 4x^2))) dx,   a = (sqrt(2)-1)/2,

and the lambda-integral along the imaginary-time continuation of the
separatrix,

    A = int_{lam0}^{pi} dlam / (3 s(lam)),   s(lam) = sqrt(-2/3 (V(lam) + 1/2)).

Both integrands are written in the endpoint offsets so the square-root
singularities are resolved to full precision.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import cache
from typing import Self

from numerics.quadrature import Endpoint, QuadratureSpec, tanh_sinh_quadrature

from .potential import LAMBDA_0

logger = logging.getLogger(__name__)

X_UPPER = 0.5 * (math.sqrt(2.0) - 1.0)
# Second root of 1 - 4x - 4x^2.
X_OTHER_ROOT = -0.5 * (math.sqrt(2.0) + 1.0)
# sqrt(2 + 2 cos(lam0)) = sqrt(2) - 1.
ROOT_GAP_AT_TURN = math.sqrt(2.0) - 1.0
PUBLISHED_A = 0.177744


class ConstantAMethod(str, Enum):
    """Quadrature route to the constant A."""

    X_INTEGRAL = "x-integral"
    LAMBDA_INTEGRAL = "lambda-integral"

    @classmethod
    def choices(cls: type[Self]) -> list[tuple[str, str]]:
        """Return list of (value, label) tuples."""
        return [(member.value, member.value) for member in cls]

    def __str__(self: Self) -> str:
        """Return string representation."""
        return self.value


@dataclass(frozen=True)
class ConstantAResult:
    """Value of A with the quadrature's error estimate."""

    value: float
    method: ConstantAMethod
    error_estimate: float
    levels: int
    evaluations: int


def x_integrand(x: float) -> float:
    """The x-integrand in its defining form."""
    return 2.0 / (1.0 - x) * math.sqrt(x / (3.0 * (x + 1.0) * (1.0 - 4.0 * x - 4.0 * x * x)))


def _x_integrand_offsets(x: float, d_lo: float, d_hi: float) -> float:
    # 1 - 4x - 4x^2 = 4 (a - x) (x - b)
    quartic = 4.0 * d_hi * (x - X_OTHER_ROOT)
    return 2.0 / (1.0 - x) * math.sqrt(d_lo / (3.0 * (x + 1.0) * quartic))


def lambda_integrand(lam: float) -> float:
    """``1 / (3 s(lam))`` in its defining form, for ``lam`` in (lam0, pi)."""
    excess = 1.0 - math.cos(lam) - 1.0 / math.sqrt(2.0 + 2.0 * math.cos(lam)) + 0.5
    return 1.0 / (3.0 * math.sqrt(-2.0 * excess / 3.0))


def _lambda_integrand_offsets(lam: float, d_lo: float, d_hi: float) -> float:
    del lam
    # sqrt(2 + 2 cos(lam)) = 2 sin((pi - lam)/2)
    root_gap = 2.0 * math.sin(0.5 * d_hi)
    # cos(lam0) - cos(lam) as a product of sines
    cos_drop = 2.0 * math.sin(LAMBDA_0 + 0.5 * d_lo) * math.sin(0.5 * d_lo)
    excess = cos_drop * (1.0 - 2.0 / (root_gap * ROOT_GAP_AT_TURN * (root_gap + ROOT_GAP_AT_TURN)))
    return 1.0 / (3.0 * math.sqrt(-2.0 * excess / 3.0))


def constant_A_x_integral(tol: float = 1e-12, max_levels: int = 12) -> ConstantAResult:  # noqa: N802
    """A by tanh-sinh over the x-integral, both endpoints flagged singular."""
    spec = QuadratureSpec(0.0, X_UPPER, target_tol=tol, max_levels=max_levels, endpoint_offsets=True)
    result = tanh_sinh_quadrature(_x_integrand_offsets, spec)
    logger.debug("constant A by the x-integral", extra={"value": result.value, "error": result.error})
    return ConstantAResult(float(result.value), ConstantAMethod.X_INTEGRAL, result.error, result.levels, result.evaluations)


def constant_A_lambda_integral(tol: float = 1e-12, max_levels: int = 12) -> ConstantAResult:  # noqa: N802
    """A by tanh-sinh over the lambda-integral from lam0 to pi."""
    spec = QuadratureSpec(
        LAMBDA_0,
        math.pi,
        singular_at=frozenset({Endpoint.LOWER}),
        target_tol=tol,
        max_levels=max_levels,
        endpoint_offsets=True,
    )
    result = tanh_sinh_quadrature(_lambda_integrand_offsets, spec)
    logger.debug("constant A by the lambda-integral", extra={"value": result.value, "error": result.error})
    return ConstantAResult(
        float(result.value),
        ConstantAMethod.LAMBDA_INTEGRAL,
        result.error,
        result.levels,
        result.evaluations,
    )


@cache
def reference_A() -> float:  # noqa: N802
    """A from the x-integral at the default tolerance, computed once."""
    return constant_A_x_integral().value
