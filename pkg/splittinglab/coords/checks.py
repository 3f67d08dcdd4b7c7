"""Property checks of the coordinate tower.

Every transform is verified on seeded random samples: round trips, the
exactness of ``G = L - eta xi``, the quadratic remainder of the first-order
Poincare series and symplecticity of the real-coordinate maps.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from rpc3bp.states import CartesianState

from .poincare import first_order_series, poincare_to_polar, polar_to_poincare, real_slice
from .polar import cart_to_polar, polar_to_cart
from .scaling import scale, unscale
from .states import PoincareState, PolarState, ScaledState, wrap_angle

if TYPE_CHECKING:
    from collections.abc import Callable

logger = logging.getLogger(__name__)

type RealMap = Callable[[np.ndarray], np.ndarray]

CANONICAL = np.array(
    [
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
    ],
)
# (lam, L, X, Y) with dlam ^ dL + dX ^ dY.
PAIRED = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ],
)


@dataclass(frozen=True)
class CoordinateCheck:
    """Outcome of one property check."""

    name: str
    worst: float
    threshold: float
    passed: bool
    detail: str = ""


def _jacobian(transform: RealMap, point: np.ndarray, step: float) -> np.ndarray:
    n = point.size
    columns = []
    for k in range(n):
        e = np.zeros(n)
        e[k] = step
        f = [transform(point + j * e) for j in (-2, -1, 1, 2)]
        columns.append((f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * step))
    return np.column_stack(columns)


def symplectic_defect(
    transform: RealMap,
    point: np.ndarray,
    omega_in: np.ndarray = CANONICAL,
    omega_out: np.ndarray = CANONICAL,
    factor: float = 1.0,
    step: float = 1e-3,
) -> float:
    """Largest entry of ``J^T omega_out J - factor * omega_in`` for the map's Jacobian J."""
    jac = _jacobian(transform, np.asarray(point, dtype=float), step)
    return float(np.max(np.abs(jac.T @ omega_out @ jac - factor * omega_in)))


def polar_map(point: np.ndarray) -> np.ndarray:
    """``(r, theta, R, G) -> (q1, q2, p1, p2)``."""
    return np.array(polar_to_cart(PolarState(*point)).to_binary64())


def poincare_map(point: np.ndarray) -> np.ndarray:
    """``(lam, L, X, Y) -> (r, theta, R, G)`` on the real slice."""
    lam, big_l, x_real, y_real = point
    return np.array(poincare_to_polar(real_slice(lam, big_l, x_real, y_real)).to_binary64())


def scaling_map(delta: float) -> RealMap:
    """``(lam, Lam, Xs, Ys) -> (lam, L, X, Y)`` for a fixed delta."""

    def transform(point: np.ndarray) -> np.ndarray:
        lam, big_lam, x_real, y_real = point
        ps = unscale(ScaledState(lam, big_lam, complex(x_real, y_real), complex(x_real, -y_real), delta))
        return np.array([ps.lam, ps.L, ps.eta.real, ps.eta.imag])

    return transform


def first_order_residual(state: PoincareState) -> float:
    """Distance between the exact polar image and its first-order series."""
    exact = poincare_to_polar(state)
    series = first_order_series(state)
    dr = float(exact.r) - series.r
    dtheta = float(wrap_angle(float(exact.theta) - series.theta))
    dR = float(exact.R) - series.R  # noqa: N806
    return math.sqrt(dr * dr + dtheta * dtheta + dR * dR)


def near_circular_state(amplitude: float, direction: tuple[float, complex], lam: float) -> PoincareState:
    """Poincare state at ``(L - 1, eta) = amplitude * direction``."""
    dl, deta = direction
    eta = amplitude * deta
    return PoincareState(lam, 1.0 + amplitude * dl, eta, eta.conjugate())


def _random_cartesian(rng: np.random.Generator) -> CartesianState:
    r = rng.uniform(0.6, 1.6)
    theta = rng.uniform(-math.pi, math.pi)
    radial = rng.uniform(-0.2, 0.2)
    angular = math.sqrt(r) * rng.uniform(0.9, 1.1)
    return polar_to_cart(PolarState(r, theta, radial, angular))


def _random_poincare(rng: np.random.Generator, min_amplitude: float = 0.0) -> PoincareState:
    eta = rng.uniform(min_amplitude, 0.3) * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
    return PoincareState(rng.uniform(-math.pi, math.pi), rng.uniform(0.8, 1.2), eta, eta.conjugate())


def _check(name: str, worst: float, threshold: float, detail: str = "") -> CoordinateCheck:
    passed = bool(worst <= threshold)
    if not passed:
        logger.warning("coordinate check failed", extra={"check": name, "worst": worst, "threshold": threshold})
    return CoordinateCheck(name, worst, threshold, passed, detail)


def run_coordinate_checks(samples: int, seed: int) -> list[CoordinateCheck]:
    """Run every coordinate property on ``samples`` seeded random points."""
    rng = np.random.default_rng(seed)
    n_sym = min(samples, 100)

    cart_worst = 0.0
    in_range = True
    for _ in range(samples):
        s = _random_cartesian(rng)
        p = cart_to_polar(s)
        in_range &= -math.pi < float(p.theta) <= math.pi
        back = polar_to_cart(p)
        cart_worst = max(cart_worst, float(np.max(np.abs(np.subtract(back.to_binary64(), s.to_binary64())))))

    poi_worst = 0.0
    g_worst = 0.0
    for _ in range(samples):
        ps = _random_poincare(rng)
        polar = poincare_to_polar(ps)
        in_range &= -math.pi < float(polar.theta) <= math.pi
        back = polar_to_poincare(polar)
        in_range &= -math.pi < float(back.lam) <= math.pi
        g_worst = max(g_worst, abs(float(back.L) - float((back.eta * back.xi).real) - float(polar.G)))
        diffs = [
            abs(float(wrap_angle(float(back.lam) - float(ps.lam)))),
            abs(float(back.L) - float(ps.L)),
            abs(complex(back.eta) - complex(ps.eta)),
        ]
        poi_worst = max(poi_worst, *diffs)

    scale_worst = 0.0
    for _ in range(samples):
        ps = _random_poincare(rng)
        delta = rng.uniform(0.05, 0.5)
        back = unscale(scale(ps, delta))
        scale_worst = max(scale_worst, abs(back.L - ps.L), abs(back.eta - ps.eta))

    ratios = []
    for _ in range(min(samples, 50)):
        direction = (rng.uniform(-1.0, 1.0), complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)))
        lam = rng.uniform(-math.pi, math.pi)
        coarse = first_order_residual(near_circular_state(1e-3, direction, lam))
        fine = first_order_residual(near_circular_state(5e-4, direction, lam))
        ratios.append(coarse / fine)
    ratio_lo, ratio_hi = min(ratios), max(ratios)

    sym_worst = 0.0
    for _ in range(n_sym):
        polar_point = np.array([rng.uniform(0.6, 1.6), rng.uniform(-3.0, 3.0), rng.uniform(-0.2, 0.2), rng.uniform(0.8, 1.2)])
        sym_worst = max(sym_worst, symplectic_defect(polar_map, polar_point))
        ps = _random_poincare(rng, min_amplitude=0.05)
        eta = complex(ps.eta) * math.sqrt(2.0)
        poi_point = np.array([rng.uniform(-2.5, 2.5), float(ps.L), eta.real, eta.imag])
        sym_worst = max(sym_worst, symplectic_defect(poincare_map, poi_point, omega_in=PAIRED))
        delta = rng.uniform(0.05, 0.5)
        scaled_point = np.array([0.3, rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)])
        sym_worst = max(sym_worst, symplectic_defect(scaling_map(delta), scaled_point, PAIRED, PAIRED, factor=delta * delta))

    return [
        _check("cartesian_polar_round_trip", cart_worst, 1e-12),
        _check("polar_poincare_round_trip", poi_worst, 1e-12),
        _check("angular_momentum_identity", g_worst, 1e-13),
        _check("scaling_round_trip", scale_worst, 1e-15),
        _check(
            "series_quadratic_remainder",
            max(abs(ratio_lo - 4.0), abs(ratio_hi - 4.0)),
            1.0,
            detail=f"ratios in [{ratio_lo:.4f}, {ratio_hi:.4f}]",
        ),
        _check("symplectic_defect", sym_worst, 1e-10),
        _check("angle_normalization", 0.0 if in_range else 1.0, 0.0),
    ]
