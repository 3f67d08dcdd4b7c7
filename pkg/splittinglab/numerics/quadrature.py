"""Double-exponential (tanh-sinh) quadrature for endpoint singularities."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Any, Self

from .exceptions import NonFiniteEvaluationError, ParameterError, QuadratureConvergenceError

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator

logger = logging.getLogger(__name__)

type Integrand = Callable[..., Any]

HALF_PI = 0.5 * math.pi
# Nodes closer than this to an endpoint are dropped.
TINY_OFFSET = 1e-300


class Endpoint(str, Enum):
    """End of an integration interval."""

    LOWER = "lower"
    UPPER = "upper"

    def __str__(self: Self) -> str:
        """Return string representation."""
        return self.value


@dataclass(frozen=True)
class QuadratureSpec:
    """Interval, singular endpoints and accuracy target of one integral.

    With ``endpoint_offsets`` the integrand is called as
    ``f(x, x - lower, upper - x)`` where both distances are exact even when
    ``x`` itself rounds onto an endpoint.
    """

    lower: float
    upper: float
    singular_at: frozenset[Endpoint] = frozenset({Endpoint.LOWER, Endpoint.UPPER})
    target_tol: float = 1e-12
    max_levels: int = 12
    endpoint_offsets: bool = False

    def __post_init__(self: QuadratureSpec) -> None:
        """Validate the interval and the target."""
        if not self.lower < self.upper:
            msg = f"lower must be below upper, got [{self.lower}, {self.upper}]"
            raise ParameterError(msg)
        if not self.target_tol > 0:
            msg = f"target_tol must be positive, got {self.target_tol}"
            raise ParameterError(msg)
        # Convergence compares two successive levels.
        if self.max_levels < 2:
            msg = f"max_levels must be at least 2, got {self.max_levels}"
            raise ParameterError(msg)


@dataclass(frozen=True)
class QuadratureResult:
    """Integral value with its level-difference error estimate."""

    value: Any
    error: float
    levels: int
    evaluations: int

    def __iter__(self: QuadratureResult) -> Iterator[Any]:
        """Unpack as ``(value, error)``."""
        return iter((self.value, self.error))


class _Evaluator:
    def __init__(self: _Evaluator, f: Integrand, spec: QuadratureSpec) -> None:
        self.f = f
        self.spec = spec
        self.half = 0.5 * (spec.upper - spec.lower)
        self.evaluations = 0
        self.floor = {
            endpoint: self._floor(endpoint, value)
            for endpoint, value in ((Endpoint.LOWER, spec.lower), (Endpoint.UPPER, spec.upper))
        }

    def _floor(self: _Evaluator, endpoint: Endpoint, value: float) -> float:
        if self.spec.endpoint_offsets or endpoint not in self.spec.singular_at:
            return TINY_OFFSET
        return max(TINY_OFFSET, 2.0 * math.ulp(value))

    def __call__(self: _Evaluator, offset: float, endpoint: Endpoint) -> Any:
        spec = self.spec
        width = spec.upper - spec.lower
        if endpoint is Endpoint.LOWER:
            x, d_lo, d_hi = spec.lower + offset, offset, width - offset
        else:
            x, d_lo, d_hi = spec.upper - offset, width - offset, offset
        value = self.f(x, d_lo, d_hi) if spec.endpoint_offsets else self.f(x)
        self.evaluations += 1
        if not math.isfinite(abs(value)):
            msg = f"integrand is not finite at x={x!r}"
            raise NonFiniteEvaluationError(msg)
        return value

    def pair(self: _Evaluator, t: float) -> Any:
        """Weighted contribution of the two nodes at +t and -t."""
        u = HALF_PI * math.sinh(t)
        if u > 350.0:
            return 0.0
        offset = self.half * 2.0 / (math.exp(2.0 * u) + 1.0)
        weight = self.half * HALF_PI * math.cosh(t) / math.cosh(u) ** 2
        total: Any = 0.0
        for endpoint in Endpoint:
            if offset >= self.floor[endpoint]:
                total += weight * self(offset, endpoint)
        return total

    def centre(self: _Evaluator) -> Any:
        offset = self.half
        return self.half * HALF_PI * self(offset, Endpoint.LOWER)


def _t_max(half: float) -> float:
    # Beyond this abscissa the node offset is below TINY_OFFSET.
    u = 0.5 * math.log(2.0 * half / TINY_OFFSET)
    return math.asinh(u / HALF_PI)


def tanh_sinh_quadrature(f: Integrand, spec: QuadratureSpec) -> QuadratureResult:
    """Integrate f over ``[spec.lower, spec.upper]`` by tanh-sinh.

    The step is halved level by level, reusing every earlier node, until the
    difference between two consecutive levels drops below
    ``spec.target_tol``. That difference is returned as the error estimate.
    """
    evaluator = _Evaluator(f, spec)
    t_max = _t_max(evaluator.half)

    h = 1.0
    total: Any = evaluator.centre()
    k = 1
    while k * h <= t_max:
        total += evaluator.pair(k * h)
        k += 1
    previous = h * total

    for level in range(1, spec.max_levels + 1):
        h *= 0.5
        k = 1
        while k * h <= t_max:
            total += evaluator.pair(k * h)
            k += 2
        current = h * total
        error = abs(current - previous)
        logger.debug("tanh-sinh level", extra={"level": level, "error": error, "evaluations": evaluator.evaluations})
        if error <= spec.target_tol and level >= 2:
            return QuadratureResult(value=current, error=error, levels=level, evaluations=evaluator.evaluations)
        previous = current

    msg = f"tanh-sinh did not reach {spec.target_tol:.1e} in {spec.max_levels} levels (last difference {error:.3e})"
    raise QuadratureConvergenceError(msg)


def half_line_quadrature(
    f: Integrand,
    *,
    scale: float = 1.0,
    target_tol: float = 1e-12,
    max_levels: int = 12,
) -> QuadratureResult:
    """Integrate ``f(tau)`` over ``[0, inf)`` through ``tau = scale * v / (1 - v)``."""
    if not scale > 0:
        msg = f"scale must be positive, got {scale}"
        raise ParameterError(msg)

    def mapped(v: float, d_lo: float, d_hi: float) -> Any:
        del v
        tau = scale * d_lo / d_hi
        if not math.isfinite(tau):
            return 0.0
        return f(tau) * scale / d_hi / d_hi

    spec = QuadratureSpec(
        lower=0.0,
        upper=1.0,
        singular_at=frozenset({Endpoint.UPPER}),
        target_tol=target_tol,
        max_levels=max_levels,
        endpoint_offsets=True,
    )
    return tanh_sinh_quadrature(mapped, spec)
