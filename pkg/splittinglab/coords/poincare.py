"""Rotating Poincare elements of the osculating Keplerian ellipse.

The osculating orbit is the two-body ellipse around a unit mass at the origin
with energy ``R^2/2 + G^2/(2 r^2) - 1/r``. With Delaunay action
``L = (-2 E_kep)^{-1/2}``, mean anomaly ``ell`` and argument of pericentre
``g`` measured in the rotating frame,

    lam = ell + g,    eta = sqrt(L - G) exp(i g),    xi = conj(eta),

so that ``G = L - eta xi`` and the form ``dlam ^ dL + i deta ^ dxi`` is
canonical. To first order in ``(L - 1, eta, xi)``

    r     = 1 + 2 (L - 1) - (exp(-i lam) eta + exp(i lam) xi) / sqrt(2)
    theta = lam + i sqrt(2) (exp(-i lam) eta - exp(i lam) xi)
    R     = i (exp(-i lam) eta - exp(i lam) xi) / sqrt(2)

which :func:`first_order_series` evaluates and the coordinate checks compare
against the exact transform.
"""

from __future__ import annotations

import cmath
import math
from typing import Any

from numerics.precision import arithmetic_of
from rpc3bp.states import CartesianState

from .exceptions import OsculatingOrbitError
from .kepler import kepler_solve
from .polar import cart_to_polar, polar_to_cart
from .states import PoincareState, PolarState, wrap_angle


def polar_to_poincare(p: PolarState) -> PoincareState:
    """Exact map from polar coordinates to Poincare elements."""
    arith = arithmetic_of(p.r, p.theta, p.R, p.G)
    r, radial, angular = p.r, p.R, p.G
    energy = radial * radial * 0.5 + angular * angular / (r * r * 2) - 1 / r
    if float(energy) >= 0.0:
        msg = f"osculating orbit is not elliptic (two-body energy {float(energy):.6g})"
        raise OsculatingOrbitError(msg)
    if float(angular) <= 0.0:
        msg = f"osculating orbit is not prograde (G={float(angular):.6g})"
        raise OsculatingOrbitError(msg)

    big_l = 1 / arith.sqrt(energy * -2)
    e_cos = 1 - r / (big_l * big_l)
    e_sin = r * radial / big_l
    e_sq = e_cos * e_cos + e_sin * e_sin
    ecc_anomaly = arith.atan2(e_sin, e_cos)
    mean_anomaly = ecc_anomaly - e_sin
    # Both arguments carry a common factor e, so e = 0 gives f = E = 0.
    true_anomaly = arith.atan2(angular / big_l * e_sin, e_cos - e_sq)
    g = p.theta - true_anomaly

    gap = big_l - angular
    amplitude = arith.sqrt(gap) if float(gap) > 0.0 else arith.real(0)
    eta = arith.complex_scalar(arith.cos(g), arith.sin(g)) * amplitude
    return PoincareState(wrap_angle(mean_anomaly + g), big_l, eta, eta.conjugate())


def poincare_to_polar(ps: PoincareState) -> PolarState:
    """Exact map from Poincare elements (real slice) to polar coordinates."""
    arith = arithmetic_of(ps.lam, ps.L, ps.eta, ps.xi)
    big_l = ps.L
    gamma = (ps.eta * ps.xi).real
    if float(gamma) < 0.0:
        gamma = arith.real(0)
    angular = big_l - gamma
    if float(angular) <= 0.0 or float(big_l) <= 0.0:
        msg = f"elements L={float(big_l):.6g}, eta*xi={float(gamma):.6g} do not describe a prograde ellipse"
        raise OsculatingOrbitError(msg)
    e = arith.sqrt(gamma * (big_l * 2 - gamma)) / big_l
    g = arith.atan2(ps.eta.imag, ps.eta.real) if float(gamma) > 0.0 else arith.real(0)
    ecc_anomaly = kepler_solve(wrap_angle(ps.lam - g), e)
    cos_e, sin_e = arith.cos(ecc_anomaly), arith.sin(ecc_anomaly)
    r = big_l * big_l * (1 - e * cos_e)
    true_anomaly = arith.atan2(angular / big_l * sin_e, cos_e - e)
    radial = big_l * e * sin_e / r
    return PolarState(r, wrap_angle(g + true_anomaly), radial, angular)


def cart_to_poincare(s: CartesianState) -> PoincareState:
    """Cartesian state to Poincare elements."""
    return polar_to_poincare(cart_to_polar(s))


def poincare_to_cart(ps: PoincareState) -> CartesianState:
    """Poincare elements to a Cartesian state."""
    return polar_to_cart(poincare_to_polar(ps))


def real_slice(lam: Any, big_l: Any, x_real: Any, y_real: Any) -> PoincareState:
    """Build elements from real coordinates with ``eta = (X + iY)/sqrt(2)``."""
    arith = arithmetic_of(lam, big_l, x_real, y_real)
    eta = arith.complex_scalar(x_real, y_real) * (1 / arith.sqrt(arith.real(2)))
    return PoincareState(lam, big_l, eta, eta.conjugate())


def h0_poincare(ps: PoincareState) -> Any:
    """Unperturbed Hamiltonian ``-1/(2L^2) - L + eta xi``."""
    return -1 / (ps.L * ps.L * 2) - ps.L + (ps.eta * ps.xi).real


def first_order_series(ps: PoincareState) -> PolarState:
    """First-order expansion of ``(r, theta, R, G)`` around the circular orbit (binary64)."""
    lam, big_l = float(ps.lam), float(ps.L)
    eta, xi = complex(ps.eta), complex(ps.xi)
    a = cmath.exp(-1j * lam) * eta
    b = cmath.exp(1j * lam) * xi
    r = 1.0 + 2.0 * (big_l - 1.0) - (a + b) / math.sqrt(2.0)
    theta = lam + 1j * math.sqrt(2.0) * (a - b)
    radial = 1j * (a - b) / math.sqrt(2.0)
    return PolarState(r.real, theta.real, radial.real, big_l - (eta * xi).real)
