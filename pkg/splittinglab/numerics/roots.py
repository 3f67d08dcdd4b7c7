"""Scalar root finding: Illinois regula falsi and safeguarded Newton.

Both variants work on plain floats and on double-words; the arithmetic back
end only decides how the midpoints and Newton updates are formed.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any

from .exceptions import NonFiniteEvaluationError, ParameterError, RootBracketError, RootConvergenceError
from .precision import Precision, get_arithmetic

if TYPE_CHECKING:
    from collections.abc import Callable

    from .precision import Arithmetic

logger = logging.getLogger(__name__)

type ScalarFunction = Callable[[Any], Any]

DEFAULT_MAX_ITER = 200


def _sign(value: float) -> int:
    return (value > 0) - (value < 0)


def _checked(arith: Arithmetic, f: ScalarFunction, x: Any) -> tuple[Any, float]:
    value = f(x)
    as_float = arith.to_float(value)
    if not arith.isfinite(value):
        msg = f"function value at x={arith.to_float(x)!r} is not finite"
        raise NonFiniteEvaluationError(msg)
    return value, as_float


def find_root(
    f: ScalarFunction,
    *,
    bracket: tuple[Any, Any] | None = None,
    x0: Any = None,
    fprime: ScalarFunction | None = None,
    tol: float = 1e-12,
    x_tol: float | None = None,
    max_iter: int = DEFAULT_MAX_ITER,
    precision: Precision = Precision.NATIVE,
) -> Any:
    """Locate a zero of ``f``.

    With a bracket the search always converges. It starts from ``x0`` when
    one is given, then takes Illinois steps (Newton steps when ``fprime`` is
    given) and falls back to bisection whenever a step leaves the bracket or
    stops shrinking it. Without a bracket a plain Newton
    iteration runs from ``x0`` and fails when the derivative vanishes.

    The iteration stops as soon as ``|f(x)| <= tol``. When the bracket has
    collapsed to the resolution of the arithmetic the best endpoint is
    returned.
    """
    if tol <= 0:
        msg = f"tol must be positive, got {tol}"
        raise ParameterError(msg)
    arith = get_arithmetic(precision)
    if bracket is not None:
        return _bracketed(arith, f, bracket, fprime, tol, x_tol, max_iter, x0)
    if x0 is None:
        msg = "find_root needs either a bracket or an initial guess"
        raise ParameterError(msg)
    if fprime is None:
        msg = "an unbracketed search needs the derivative fprime"
        raise ParameterError(msg)
    return _newton(arith, f, fprime, arith.coerce(x0), tol, x_tol, max_iter)


def _resolution(arith: Arithmetic, x: Any, x_tol: float | None) -> float:
    if x_tol is not None:
        return x_tol
    return 4.0 * arith.epsilon * max(1.0, abs(arith.to_float(x)))


def _bracketed(
    arith: Arithmetic,
    f: ScalarFunction,
    bracket: tuple[Any, Any],
    fprime: ScalarFunction | None,
    tol: float,
    x_tol: float | None,
    max_iter: int,
    x0: Any = None,
) -> Any:
    a, b = arith.coerce(bracket[0]), arith.coerce(bracket[1])
    fa, fa_f = _checked(arith, f, a)
    if abs(fa_f) <= tol:
        return a
    fb, fb_f = _checked(arith, f, b)
    if abs(fb_f) <= tol:
        return b
    if _sign(fa_f) == _sign(fb_f):
        msg = f"no sign change on [{arith.to_float(a)!r}, {arith.to_float(b)!r}]: f={fa_f:.3e}, {fb_f:.3e}"
        raise RootBracketError(msg)

    # Illinois weights; the retained endpoint's value is halved on repeats.
    wa, wb = fa, fb
    last_side = 0
    width = abs(arith.to_float(b - a))
    stalled = 0
    for iteration in range(1, max_iter + 1):
        c = None
        if x0 is not None and iteration == 1:
            c = arith.coerce(x0)
        elif fprime is not None:
            best, fbest = (a, fa) if abs(fa_f) < abs(fb_f) else (b, fb)
            slope = fprime(best)
            if arith.to_float(slope) != 0.0 and arith.isfinite(slope):
                c = best - fbest / slope
        elif arith.to_float(wb - wa) != 0.0:
            c = (a * wb - b * wa) / (wb - wa)

        lo, hi = (a, b) if arith.to_float(a) < arith.to_float(b) else (b, a)
        inside = c is not None and arith.to_float(lo) < arith.to_float(c) < arith.to_float(hi)
        if not inside or stalled >= 2:
            c = (a + b) * 0.5
            stalled = 0

        fc, fc_f = _checked(arith, f, c)
        if abs(fc_f) <= tol:
            logger.debug("bracketed root converged", extra={"iterations": iteration})
            return c

        if _sign(fc_f) == _sign(fb_f):
            b, fb, fb_f, wb = c, fc, fc_f, fc
            if last_side == -1:
                wa = wa * 0.5
            last_side = -1
        else:
            a, fa, fa_f, wa = c, fc, fc_f, fc
            if last_side == 1:
                wb = wb * 0.5
            last_side = 1

        new_width = abs(arith.to_float(b - a))
        stalled = stalled + 1 if new_width > 0.5 * width else 0
        width = new_width
        if width <= _resolution(arith, c, x_tol):
            best = a if abs(fa_f) < abs(fb_f) else b
            logger.debug(
                "bracket collapsed before the residual tolerance",
                extra={"iterations": iteration, "residual": min(abs(fa_f), abs(fb_f))},
            )
            return best

    msg = f"bracketed search did not converge in {max_iter} iterations"
    raise RootConvergenceError(msg)


def _newton(
    arith: Arithmetic,
    f: ScalarFunction,
    fprime: ScalarFunction,
    x: Any,
    tol: float,
    x_tol: float | None,
    max_iter: int,
) -> Any:
    for iteration in range(1, max_iter + 1):
        fx, fx_f = _checked(arith, f, x)
        if abs(fx_f) <= tol:
            logger.debug("newton converged", extra={"iterations": iteration})
            return x
        slope = fprime(x)
        if arith.to_float(slope) == 0.0 or not arith.isfinite(slope):
            msg = f"derivative vanishes at x={arith.to_float(x)!r}"
            raise RootConvergenceError(msg)
        step = fx / slope
        x = x - step
        if abs(arith.to_float(step)) <= _resolution(arith, x, x_tol):
            return x
    msg = f"newton iteration did not converge in {max_iter} iterations"
    raise RootConvergenceError(msg)
