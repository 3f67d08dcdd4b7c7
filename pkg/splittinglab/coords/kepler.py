"""Kepler's equation ``E - e sin E = M``."""

from __future__ import annotations

import math
from typing import Any

from numerics.exceptions import NumericalError
from numerics.precision import arithmetic_of
from numerics.roots import find_root

from .exceptions import KeplerConvergenceError, KeplerDomainError


def kepler_solve(mean_anomaly: Any, e: Any) -> Any:
    """Eccentric anomaly for a mean anomaly and an eccentricity in [0, 1).

    The mean anomaly is reduced to (-pi, pi], where the root lies in
    ``[M - e, M + e]``; a Newton iteration safeguarded by that bracket and
    seeded at ``M + e sin M`` finds it, and the reduction is undone.
    """
    if not 0.0 <= float(e) < 1.0:
        msg = f"eccentricity must lie in [0, 1), got {float(e)!r}"
        raise KeplerDomainError(msg)
    arith = arithmetic_of(mean_anomaly, e)
    e = arith.coerce(e)
    if float(e) == 0.0:
        return mean_anomaly
    turns = math.floor(float(mean_anomaly) / (2.0 * math.pi) + 0.5)
    two_pi_turns = arith.pi * (2 * turns)
    reduced = mean_anomaly - two_pi_turns if turns else arith.coerce(mean_anomaly)
    if float(reduced) == 0.0:
        return mean_anomaly

    def residual(ecc_anomaly: Any) -> Any:
        return ecc_anomaly - e * arith.sin(ecc_anomaly) - reduced

    def slope(ecc_anomaly: Any) -> Any:
        return 1 - e * arith.cos(ecc_anomaly)

    tol = 16 * arith.epsilon * (1.0 + abs(float(reduced)))
    try:
        root = find_root(
            residual,
            bracket=(reduced - e, reduced + e),
            x0=reduced + e * arith.sin(reduced),
            fprime=slope,
            tol=tol,
            precision=arith.precision,
        )
    except NumericalError as exc:
        msg = f"Kepler's equation failed for M={float(mean_anomaly)!r}, e={float(e)!r}: {exc}"
        raise KeplerConvergenceError(msg) from exc
    return root + two_pi_turns if turns else root
