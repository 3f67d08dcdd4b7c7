"""Seeds of the one-dimensional invariant manifolds of L3."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Self

import numpy as np

from numerics.precision import Precision, get_arithmetic
from rpc3bp.lagrange import lagrange_points
from rpc3bp.states import CartesianState

from .config import EPSILON_RANGE
from .exceptions import SeedOffsetError

if TYPE_CHECKING:
    from rpc3bp.lagrange import LagrangePoint
    from rpc3bp.params import MuParam

logger = logging.getLogger(__name__)


class ManifoldKind(str, Enum):
    """Unstable manifolds are followed forward in time, stable ones backward."""

    UNSTABLE = "unstable"
    STABLE = "stable"

    @property
    def time_sign(self: Self) -> float:
        """Direction of integration."""
        return 1.0 if self is ManifoldKind.UNSTABLE else -1.0

    def __str__(self: Self) -> str:
        """Return string representation."""
        return self.value


class BranchSign(str, Enum):
    """Half of a manifold: ``+`` leaves L3 into the q2 > 0 half-plane, towards L5."""

    PLUS = "+"
    MINUS = "-"

    @property
    def factor(self: Self) -> float:
        """Sign of the seed displacement's q2 component."""
        return 1.0 if self is BranchSign.PLUS else -1.0

    @classmethod
    def from_str(cls: type[Self], value: str) -> Self:
        """Parse ``+``/``-`` or ``plus``/``minus``."""
        aliases = {"plus": "+", "minus": "-"}
        try:
            return cls(aliases.get(value.lower(), value))
        except ValueError as e:
            msg = f"Invalid branch sign: {value}. Must be one of {[m.value for m in cls]}"
            raise ValueError(msg) from e

    def __str__(self: Self) -> str:
        """Return string representation."""
        return self.value


@dataclass(frozen=True)
class ManifoldBranch:
    """A seed on one branch of ``W^u(L3)`` or ``W^s(L3)``."""

    mu: MuParam
    kind: ManifoldKind
    sign: BranchSign
    seed_offset: float
    seed_state: CartesianState
    precision: Precision
    l3: LagrangePoint

    @property
    def hyperbolic_rate(self: ManifoldBranch) -> float:
        """The positive eigenvalue nu at L3."""
        return self.l3.linearization.hyperbolic_rate

    @property
    def direction(self: ManifoldBranch) -> np.ndarray:
        """Unit displacement of the seed from L3."""
        lin = self.l3.linearization
        v = lin.unstable_direction if self.kind is ManifoldKind.UNSTABLE else lin.stable_direction
        return oriented(v, self.sign)


def oriented(v: np.ndarray, sign: BranchSign) -> np.ndarray:
    """Flip a unit eigenvector so its q2 component has the branch's sign."""
    v = v / np.linalg.norm(v)
    return v if np.sign(v[1]) == sign.factor else -v


def seed_branch(
    m: MuParam,
    kind: ManifoldKind,
    sign: BranchSign,
    epsilon: float = 1e-7,
    precision: Precision = Precision.NATIVE,
    l3: LagrangePoint | None = None,
) -> ManifoldBranch:
    """Place a seed at distance epsilon from L3 along the hyperbolic eigenvector.

    The positive eigenvalue's vector seeds the unstable manifold, the negative
    one's the stable manifold.
    """
    lo, hi = EPSILON_RANGE
    if not lo <= epsilon <= hi:
        msg = f"seed offset must lie in [{lo:g}, {hi:g}], got {epsilon!r}"
        raise SeedOffsetError(msg)
    if l3 is None:
        l3 = lagrange_points(m, precision).l3
    lin = l3.linearization
    v = lin.unstable_direction if kind is ManifoldKind.UNSTABLE else lin.stable_direction
    step = oriented(v, sign) * epsilon
    arith = get_arithmetic(precision)
    seed = CartesianState(*(arith.coerce(c) + float(dc) for c, dc in zip(l3.state.components, step, strict=True)))
    logger.debug(
        "manifold seeded",
        extra={"mu": m.mu, "kind": str(kind), "sign": str(sign), "epsilon": epsilon, "rate": lin.hyperbolic_rate},
    )
    return ManifoldBranch(m, kind, sign, epsilon, seed, precision, l3)
