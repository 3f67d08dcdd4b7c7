"""Rotating-frame Hamiltonian of the planar circular restricted problem.

    h(q, p) = |p|^2/2 - (q1 p2 - q2 p1) - (1 - mu)/|q - (mu, 0)| - mu/|q - (mu - 1, 0)|

All scalar functions accept binary64 or double-word components and return
values of the same kind.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any

import numpy as np

from numerics.integrator import IntegratorConfig, integrate
from numerics.precision import arithmetic_of

from .exceptions import PrimaryCollisionError
from .states import CartesianState

if TYPE_CHECKING:
    from numerics.integrator import VectorField
    from numerics.precision import Arithmetic

    from .params import MuParam

logger = logging.getLogger(__name__)


def _distances(q1: Any, q2: Any, mu: Any, arith: Arithmetic) -> tuple[Any, Any, Any, Any]:
    d1 = q1 - mu
    d2 = q1 - mu + 1
    r1_sq = d1 * d1 + q2 * q2
    r2_sq = d2 * d2 + q2 * q2
    if float(r1_sq) == 0.0 or float(r2_sq) == 0.0:
        msg = f"state q=({float(q1)!r}, {float(q2)!r}) sits on a primary"
        raise PrimaryCollisionError(msg)
    return d1, d2, arith.sqrt(r1_sq), arith.sqrt(r2_sq)


def _energy(q1: Any, q2: Any, p1: Any, p2: Any, m: MuParam) -> Any:
    arith = arithmetic_of(q1, q2, p1, p2)
    mu = m.mu_in(arith)
    _, _, r1, r2 = _distances(q1, q2, mu, arith)
    kinetic = (p1 * p1 + p2 * p2) * 0.5
    rotation = q1 * p2 - q2 * p1
    return kinetic - rotation - (1 - mu) / r1 - mu / r2


def hamiltonian_h(s: CartesianState, m: MuParam) -> Any:
    """Energy of a state; conserved along the flow."""
    return _energy(s.q1, s.q2, s.p1, s.p2, m)


def jacobi_constant(s: CartesianState, m: MuParam) -> Any:
    """The Jacobi constant ``-2h``."""
    return hamiltonian_h(s, m) * -2


def gradient(s: CartesianState, m: MuParam) -> tuple[Any, Any, Any, Any]:
    """Partial derivatives ``(h_q1, h_q2, h_p1, h_p2)``."""
    q1, q2, p1, p2 = s.components
    arith = arithmetic_of(q1, q2, p1, p2)
    mu = m.mu_in(arith)
    d1, d2, r1, r2 = _distances(q1, q2, mu, arith)
    c1 = (1 - mu) / (r1 * r1 * r1)
    c2 = mu / (r2 * r2 * r2)
    h_q1 = c1 * d1 + c2 * d2 - p2
    h_q2 = (c1 + c2) * q2 + p1
    return h_q1, h_q2, p1 + q2, p2 - q1


def vector_field(s: CartesianState, m: MuParam) -> CartesianState:
    """Hamilton's equations ``(h_p, -h_q)``."""
    h_q1, h_q2, h_p1, h_p2 = gradient(s, m)
    return CartesianState(h_p1, h_p2, -h_q1, -h_q2)


def cartesian_rhs(m: MuParam) -> VectorField:
    """Vector field in the form the integrator expects."""

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        del t
        field = vector_field(CartesianState.from_vector(y), m)
        out = np.empty(4, dtype=y.dtype)
        out[:] = field.components
        return out

    return rhs


def position_hessian(s: CartesianState, m: MuParam) -> np.ndarray:
    """Second derivatives of the potential part with respect to q, in binary64."""
    q1, q2, _, _ = s.to_binary64()
    out = np.zeros((2, 2))
    for mass, centre in ((1.0 - m.mu, m.mu), (m.mu, m.mu - 1.0)):
        d = np.array([q1 - centre, q2])
        r_sq = float(d @ d)
        if r_sq == 0.0:
            msg = "hessian requested at a primary"
            raise PrimaryCollisionError(msg)
        r5 = r_sq**2.5
        out += mass * (r_sq * np.eye(2) - 3.0 * np.outer(d, d)) / r5
    return out


def jacobian(s: CartesianState, m: MuParam) -> np.ndarray:
    """Jacobian of the vector field in state order ``(q1, q2, p1, p2)``."""
    rotation = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((4, 4))
    out[:2, :2] = rotation
    out[:2, 2:] = np.eye(2)
    out[2:, :2] = -position_hessian(s, m)
    out[2:, 2:] = rotation
    return out


def involution_phi(s: CartesianState) -> CartesianState:
    """Reversing involution ``(q1, q2, p1, p2) -> (q1, -q2, -p1, p2)``."""
    return CartesianState(s.q1, -s.q2, -s.p1, s.p2)


def flow(s: CartesianState, t: float, m: MuParam, cfg: IntegratorConfig | None = None) -> CartesianState:
    """Advance a state by time t (negative t flows backward)."""
    cfg = cfg or IntegratorConfig()
    if t == 0:
        return s
    result = integrate(cartesian_rhs(m), 0.0, t, s.as_vector(cfg.precision), cfg)
    logger.debug("flow computed", extra={"t": t, "steps": result.n_steps})
    return CartesianState.from_vector(result.y)
