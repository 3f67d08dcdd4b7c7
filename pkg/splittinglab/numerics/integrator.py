"""Adaptive embedded Runge-Kutta integration with dense output and events.

The step controller, error norms and continuous extensions follow the
Dormand-Prince pairs of :mod:`numerics.tableaus`. Time is always binary64;
the state lives in whichever arithmetic back end the configuration selects.
"""

from __future__ import annotations

import bisect
import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import TYPE_CHECKING, Any, Self

import numpy as np

from .exceptions import (
    EventNotFoundError,
    IntegratorConfigError,
    MaxStepsExceededError,
    NonFiniteEvaluationError,
    StepSizeUnderflowError,
    TrajectoryRangeError,
)
from .precision import DoubleWordComplex, Precision, get_arithmetic
from .roots import find_root
from .tableaus import ErrorNorm, MaterializedTableau, materialize, tableau_for_order

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from .precision import Arithmetic

logger = logging.getLogger(__name__)

type VectorField = Callable[[float, np.ndarray], np.ndarray]
type EventFunction = Callable[[float, np.ndarray], Any]
type StepMonitor = Callable[[float, np.ndarray], None]

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 10.0


@dataclass(frozen=True)
class IntegratorConfig:
    """Tolerances and method selection for one integration."""

    rel_tol: float = 1e-12
    abs_tol: float = 1e-15
    max_step: float = math.inf
    method_order: int = 8
    dense_output: bool = False
    precision: Precision = Precision.NATIVE
    max_steps: int = 500_000
    first_step: float | None = None

    def __post_init__(self: IntegratorConfig) -> None:
        """Validate the configuration."""
        if not self.rel_tol > 0 or not self.abs_tol > 0:
            msg = f"tolerances must be positive, got rel_tol={self.rel_tol}, abs_tol={self.abs_tol}"
            raise IntegratorConfigError(msg)
        if not self.max_step > 0:
            msg = f"max_step must be positive, got {self.max_step}"
            raise IntegratorConfigError(msg)
        if self.method_order < 5:
            msg = f"method_order must be at least 5, got {self.method_order}"
            raise IntegratorConfigError(msg)
        if self.max_steps < 1:
            msg = f"max_steps must be at least 1, got {self.max_steps}"
            raise IntegratorConfigError(msg)
        if self.first_step is not None and not self.first_step > 0:
            msg = f"first_step must be positive, got {self.first_step}"
            raise IntegratorConfigError(msg)
        tableau_for_order(self.method_order)

    @property
    def tableau(self: IntegratorConfig) -> MaterializedTableau:
        """Tableau of the selected pair in the selected precision."""
        return materialize(tableau_for_order(self.method_order), self.precision)

    @property
    def arithmetic(self: IntegratorConfig) -> Arithmetic:
        """Arithmetic back end for the state."""
        return get_arithmetic(self.precision)

    def with_overrides(self: IntegratorConfig, **changes: Any) -> IntegratorConfig:
        """Return a copy with some fields replaced."""
        return replace(self, **changes)


class Direction(str, Enum):
    """Crossing direction of an event function with respect to time."""

    INCREASING = "increasing"
    DECREASING = "decreasing"
    ANY = "any"

    @classmethod
    def choices(cls: type[Self]) -> list[tuple[str, str]]:
        """Return list of (value, label) tuples."""
        return [(member.value, member.value.title()) for member in cls]

    def admits(self: Self, slope: int) -> bool:
        """Whether a crossing with the given slope sign counts."""
        match self:
            case Direction.INCREASING:
                return slope > 0
            case Direction.DECREASING:
                return slope < 0
            case _:
                return slope != 0

    def __str__(self: Self) -> str:
        """Return string representation."""
        return self.value


@dataclass(frozen=True)
class EventSpec:
    """A scalar event and the crossing that terminates the integration.

    ``horizon`` is the signed time budget: a negative horizon integrates
    backward. ``which`` selects the k-th admissible crossing. ``monitor``, if
    given, sees every accepted step and may abort by raising. A sign change
    whose jump over one step exceeds ``max_jump`` is a discontinuity of the
    event function, such as an angle wrapping around, and is not a crossing.
    """

    event_function: EventFunction
    direction: Direction = Direction.ANY
    root_tol: float = 1e-13
    which: int = 1
    horizon: float = 100.0
    monitor: StepMonitor | None = None
    max_jump: float | None = None

    def __post_init__(self: EventSpec) -> None:
        """Validate the event settings."""
        if not self.root_tol > 0:
            msg = f"root_tol must be positive, got {self.root_tol}"
            raise IntegratorConfigError(msg)
        if self.which < 1:
            msg = f"which must be at least 1, got {self.which}"
            raise IntegratorConfigError(msg)
        if self.horizon == 0 or not math.isfinite(self.horizon):
            msg = f"horizon must be finite and nonzero, got {self.horizon}"
            raise IntegratorConfigError(msg)
        if self.max_jump is not None and not self.max_jump > 0:
            msg = f"max_jump must be positive, got {self.max_jump}"
            raise IntegratorConfigError(msg)


@dataclass(frozen=True)
class DenseSegment:
    """Continuous extension over one accepted step."""

    t_old: float
    t_new: float
    y_old: np.ndarray
    coefficients: tuple[np.ndarray, ...]
    nested: bool

    @property
    def t_lo(self: DenseSegment) -> float:
        """Smaller end of the segment."""
        return min(self.t_old, self.t_new)

    @property
    def t_hi(self: DenseSegment) -> float:
        """Larger end of the segment."""
        return max(self.t_old, self.t_new)

    def __call__(self: DenseSegment, t: float) -> np.ndarray:
        """Evaluate the interpolant at time t."""
        x = (t - self.t_old) / (self.t_new - self.t_old)
        if self.nested:
            # Horner scheme alternating in x and 1 - x.
            acc = None
            for i, coeff in enumerate(reversed(self.coefficients)):
                acc = coeff if acc is None else acc + coeff
                acc = acc * x if i % 2 == 0 else acc * (1.0 - x)
            return self.y_old + acc
        acc = self.coefficients[-1]
        for coeff in reversed(self.coefficients[:-1]):
            acc = acc * x + coeff
        return self.y_old + acc * x


class DenseTrajectory:
    """Piecewise interpolant over every accepted step of one integration."""

    def __init__(self: DenseTrajectory, segments: Sequence[DenseSegment]) -> None:
        """Index the segments by their lower time bound."""
        if not segments:
            msg = "a dense trajectory needs at least one segment"
            raise TrajectoryRangeError(msg)
        self._segments = sorted(segments, key=lambda s: s.t_lo)
        self._starts = [s.t_lo for s in self._segments]

    @property
    def t_min(self: DenseTrajectory) -> float:
        """Earliest covered time."""
        return self._segments[0].t_lo

    @property
    def t_max(self: DenseTrajectory) -> float:
        """Latest covered time."""
        return self._segments[-1].t_hi

    def __len__(self: DenseTrajectory) -> int:
        """Number of segments."""
        return len(self._segments)

    def segment_at(self: DenseTrajectory, t: float) -> DenseSegment:
        """Return the segment covering time t."""
        if not self.t_min <= t <= self.t_max:
            msg = f"t={t!r} outside the trajectory span [{self.t_min!r}, {self.t_max!r}]"
            raise TrajectoryRangeError(msg)
        index = max(bisect.bisect_right(self._starts, t) - 1, 0)
        return self._segments[index]

    def __call__(self: DenseTrajectory, t: float) -> np.ndarray:
        """Evaluate the state at time t."""
        return self.segment_at(t)(t)

    def derivative(self: DenseTrajectory, t: float, step: float = 1e-3) -> np.ndarray:
        """Five-point finite-difference derivative of the interpolant.

        Central near the interior, one-sided within ``2*step`` of an end.
        """
        span = self.t_max - self.t_min
        h = min(step, span / 4.0)
        if t - 2 * h >= self.t_min and t + 2 * h <= self.t_max:
            f = [self(t + k * h) for k in (-2, -1, 1, 2)]
            return (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * h)
        sign = 1.0 if t - 2 * h < self.t_min else -1.0
        f = [self(t + sign * k * h) for k in range(5)]
        return sign * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h)

    def sample(self: DenseTrajectory, times: Sequence[float]) -> np.ndarray:
        """Evaluate at several times; rows are binary64 states."""
        arith = get_arithmetic(Precision.NATIVE)
        return np.array([arith.to_binary64(self(float(t))) for t in times])


@dataclass(frozen=True)
class IntegrationResult:
    """Final state of an integration with its step statistics."""

    t: float
    y: np.ndarray
    n_steps: int
    n_rejected: int
    n_evaluations: int
    trajectory: DenseTrajectory | None = None


@dataclass(frozen=True)
class EventResult(IntegrationResult):
    """State at the selected event crossing."""

    event_value: float = 0.0
    crossings: int = 0


def _is_complex(values: np.ndarray) -> bool:
    if values.dtype == np.object_:
        return any(isinstance(v, DoubleWordComplex) for v in values)
    return np.iscomplexobj(values)


def _combine(row: tuple[tuple[int, Any], ...], stages: Sequence[np.ndarray], like: np.ndarray, arith: Arithmetic) -> np.ndarray:
    acc = None
    for j, weight in row:
        term = stages[j] * weight
        acc = term if acc is None else acc + term
    if acc is None:
        return arith.zeros(len(like), complex_=_is_complex(like))
    return acc


def _rms(values: np.ndarray) -> float:
    return float(np.linalg.norm(values) / math.sqrt(values.size))


@dataclass
class _Stepper:
    rhs: VectorField
    cfg: IntegratorConfig
    arith: Arithmetic = field(init=False)
    tab: MaterializedTableau = field(init=False)
    n_evaluations: int = 0

    def __post_init__(self: _Stepper) -> None:
        self.arith = self.cfg.arithmetic
        self.tab = self.cfg.tableau

    def evaluate(self: _Stepper, t: float, y: np.ndarray) -> np.ndarray:
        f = np.asarray(self.rhs(t, y))
        self.n_evaluations += 1
        if not np.all(np.isfinite(self.arith.to_binary64(f))):
            msg = f"right-hand side is not finite at t={t!r}"
            raise NonFiniteEvaluationError(msg)
        return f

    def step(self: _Stepper, t: float, y: np.ndarray, f: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray, list[np.ndarray]]:
        n_stages = self.tab.spec.n_stages
        stages = [f]
        for s in range(1, n_stages):
            dy = _combine(self.tab.rows[s], stages, y, self.arith) * h
            stages.append(self.evaluate(t + self.tab.c[s] * h, y + dy))
        y_new = y + _combine(self.tab.b, stages, y, self.arith) * h
        f_new = self.evaluate(t + h, y_new)
        stages.append(f_new)
        return y_new, f_new, stages

    def error_norm(self: _Stepper, stages: list[np.ndarray], h: float, y: np.ndarray, y_new: np.ndarray) -> float:
        scale = self.cfg.abs_tol + np.maximum(self.arith.magnitudes(y), self.arith.magnitudes(y_new)) * self.cfg.rel_tol
        if self.tab.spec.error_norm is ErrorNorm.DOP853:
            e5 = self.arith.magnitudes(_combine(self.tab.error_weights[0], stages, y, self.arith)) / scale
            e3 = self.arith.magnitudes(_combine(self.tab.error_weights[1], stages, y, self.arith)) / scale
            n5, n3 = float(np.dot(e5, e5)), float(np.dot(e3, e3))
            if n5 == 0.0 and n3 == 0.0:
                return 0.0
            return abs(h) * n5 / math.sqrt((n5 + 0.01 * n3) * scale.size)
        err = self.arith.magnitudes(_combine(self.tab.error_weights[0], stages, y, self.arith)) * abs(h)
        return _rms(err / scale)

    def segment(self: _Stepper, t: float, h: float, y: np.ndarray, y_new: np.ndarray, stages: list[np.ndarray]) -> DenseSegment:
        spec = self.tab.spec
        if spec.error_norm is ErrorNorm.DOP853:
            stages = list(stages)
            base = spec.n_stages + 1
            for offset, c in enumerate(self.tab.c_extra):
                dy = _combine(self.tab.rows[base + offset], stages, y, self.arith) * h
                stages.append(self.evaluate(t + c * h, y + dy))
            f_old, f_new = stages[0], stages[spec.n_stages]
            delta = y_new - y
            coefficients = [
                delta,
                f_old * h - delta,
                delta * 2.0 - (f_new + f_old) * h,
                *(_combine(row, stages, y, self.arith) * h for row in self.tab.dense),
            ]
            return DenseSegment(t, t + h, y, tuple(coefficients), nested=True)
        coefficients = [_combine(row, stages, y, self.arith) * h for row in self.tab.dense]
        return DenseSegment(t, t + h, y, tuple(coefficients), nested=False)


def _initial_step(stepper: _Stepper, t0: float, y0: np.ndarray, f0: np.ndarray, direction: float, interval: float) -> float:
    cfg = stepper.cfg
    if cfg.first_step is not None:
        return min(cfg.first_step, interval)
    arith = stepper.arith
    y_abs = arith.magnitudes(y0)
    scale = cfg.abs_tol + y_abs * cfg.rel_tol
    d0 = _rms(y_abs / scale)
    d1 = _rms(arith.magnitudes(f0) / scale)
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h0 = min(h0, interval)
    y1 = y0 + f0 * (direction * h0)
    f1 = stepper.evaluate(t0 + direction * h0, y1)
    d2 = _rms(arith.magnitudes(f1 - f0) / scale) / h0
    order = stepper.tab.spec.error_estimator_order
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1.0 / (order + 1))
    return min(100 * h0, h1, interval, cfg.max_step)


def _prepare(y0: Any, cfg: IntegratorConfig) -> np.ndarray:
    arith = cfg.arithmetic
    return arith.vector(list(y0))


class _Driver:
    """Step loop shared by :func:`integrate` and :func:`integrate_to_event`."""

    def __init__(self: _Driver, rhs: VectorField, t0: float, y0: Any, t_bound: float, cfg: IntegratorConfig, *, keep_segments: bool) -> None:
        self.stepper = _Stepper(rhs, cfg)
        self.cfg = cfg
        self.t = float(t0)
        self.t_bound = float(t_bound)
        self.y = _prepare(y0, cfg)
        self.direction = 1.0 if self.t_bound >= self.t else -1.0
        self.keep_segments = keep_segments or cfg.dense_output
        self.segments: list[DenseSegment] = []
        self.n_steps = 0
        self.n_rejected = 0
        self.f = self.stepper.evaluate(self.t, self.y)
        interval = abs(self.t_bound - self.t)
        self.h_abs = _initial_step(self.stepper, self.t, self.y, self.f, self.direction, interval) if interval > 0 else 0.0

    @property
    def finished(self: _Driver) -> bool:
        return self.t == self.t_bound

    def advance(self: _Driver) -> DenseSegment | None:
        """Take one accepted step and return its segment when one is needed."""
        if self.n_steps >= self.cfg.max_steps:
            msg = f"step budget of {self.cfg.max_steps} exhausted at t={self.t!r}"
            raise MaxStepsExceededError(msg)
        stepper = self.stepper
        exponent = stepper.tab.spec.error_exponent
        min_step = 10 * abs(math.nextafter(self.t, self.direction * math.inf) - self.t)
        h_abs = min(max(self.h_abs, min_step), self.cfg.max_step)
        rejected = False
        while True:
            if h_abs < min_step:
                msg = f"step size {h_abs:.3e} underflowed at t={self.t!r}"
                raise StepSizeUnderflowError(msg)
            t_new = self.t + self.direction * h_abs
            if self.direction * (t_new - self.t_bound) > 0:
                t_new = self.t_bound
            h = t_new - self.t
            h_abs = abs(h)
            y_new, f_new, stages = stepper.step(self.t, self.y, self.f, h)
            error = stepper.error_norm(stages, h, self.y, y_new)
            if error < 1:
                factor = MAX_FACTOR if error == 0 else min(MAX_FACTOR, SAFETY * error**exponent)
                if rejected:
                    factor = min(1.0, factor)
                break
            h_abs *= max(MIN_FACTOR, SAFETY * error**exponent)
            rejected = True
            self.n_rejected += 1

        segment = stepper.segment(self.t, h, self.y, y_new, stages) if self.keep_segments else None
        if segment is not None and self.cfg.dense_output:
            self.segments.append(segment)
        self.t, self.y, self.f = t_new, y_new, f_new
        self.h_abs = h_abs * factor
        self.n_steps += 1
        return segment

    def trajectory(self: _Driver) -> DenseTrajectory | None:
        return DenseTrajectory(self.segments) if self.cfg.dense_output and self.segments else None


def integrate(rhs: VectorField, t0: float, t1: float, y0: Any, cfg: IntegratorConfig | None = None) -> IntegrationResult:
    """Integrate ``y' = rhs(t, y)`` from t0 to t1 with local error control."""
    cfg = cfg or IntegratorConfig()
    driver = _Driver(rhs, t0, y0, t1, cfg, keep_segments=False)
    while not driver.finished:
        driver.advance()
    logger.debug(
        "integration finished",
        extra={"steps": driver.n_steps, "rejected": driver.n_rejected, "evaluations": driver.stepper.n_evaluations},
    )
    return IntegrationResult(
        t=driver.t,
        y=driver.y,
        n_steps=driver.n_steps,
        n_rejected=driver.n_rejected,
        n_evaluations=driver.stepper.n_evaluations,
        trajectory=driver.trajectory(),
    )


def integrate_fixed(rhs: VectorField, t0: float, t1: float, y0: Any, n_steps: int, cfg: IntegratorConfig | None = None) -> np.ndarray:
    """Integrate with ``n_steps`` equal steps of the selected pair's main formula."""
    if n_steps < 1:
        msg = f"n_steps must be at least 1, got {n_steps}"
        raise IntegratorConfigError(msg)
    cfg = cfg or IntegratorConfig()
    stepper = _Stepper(rhs, cfg)
    y = _prepare(y0, cfg)
    h = (t1 - t0) / n_steps
    f = stepper.evaluate(t0, y)
    for k in range(n_steps):
        y, f, _ = stepper.step(t0 + k * h, y, f, h)
    return y


def _event_value(ev: EventSpec, t: float, y: np.ndarray) -> float:
    value = float(ev.event_function(t, y))
    if not math.isfinite(value):
        msg = f"event function is not finite at t={t!r}"
        raise NonFiniteEvaluationError(msg)
    return value


def integrate_to_event(rhs: VectorField, t0: float, y0: Any, ev: EventSpec, cfg: IntegratorConfig | None = None) -> EventResult:
    """Integrate until the ``ev.which``-th admissible crossing of the event.

    Crossings are bracketed step by step and refined on the dense output by a
    bracketed root search, so the returned state satisfies
    ``|event(t*, y*)| <= ev.root_tol`` up to the resolution of binary64 time.
    """
    cfg = cfg or IntegratorConfig()
    driver = _Driver(rhs, t0, y0, t0 + ev.horizon, cfg, keep_segments=True)
    g_old = _event_value(ev, driver.t, driver.y)
    crossings = 0
    while not driver.finished:
        t_old = driver.t
        segment = driver.advance()
        if ev.monitor is not None:
            ev.monitor(driver.t, driver.y)
        g_new = _event_value(ev, driver.t, driver.y)
        if g_old != 0.0 and (g_new == 0.0 or (g_old > 0) != (g_new > 0)):
            if ev.max_jump is not None and abs(g_new - g_old) > ev.max_jump:
                logger.debug("event discontinuity skipped", extra={"t": driver.t, "jump": g_new - g_old})
                g_old = g_new
                continue
            slope = int(math.copysign(1.0, (g_new - g_old) * (driver.t - t_old)))
            if ev.direction.admits(slope):
                crossings += 1
                if crossings == ev.which:
                    return _refine(ev, driver, segment, t_old, crossings)  # type: ignore[arg-type]
        g_old = g_new

    msg = f"no admissible crossing (direction={ev.direction}, which={ev.which}) within horizon {ev.horizon}"
    raise EventNotFoundError(msg)


def _refine(ev: EventSpec, driver: _Driver, segment: DenseSegment, t_old: float, crossings: int) -> EventResult:
    def g(t: float) -> float:
        return _event_value(ev, t, segment(t))

    t_star = float(find_root(g, bracket=(t_old, driver.t), tol=ev.root_tol))
    y_star = segment(t_star)
    logger.debug("event located", extra={"t": t_star, "crossings": crossings, "steps": driver.n_steps})
    return EventResult(
        t=t_star,
        y=y_star,
        n_steps=driver.n_steps,
        n_rejected=driver.n_rejected,
        n_evaluations=driver.stepper.n_evaluations,
        trajectory=driver.trajectory(),
        event_value=g(t_star),
        crossings=crossings,
    )
