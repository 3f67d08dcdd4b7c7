"""Phase-space points in rotating Cartesian coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Self

from numerics.precision import Precision, arithmetic_of, get_arithmetic

if TYPE_CHECKING:
    import numpy as np


@dataclass(frozen=True)
class CartesianState:
    """Position and conjugate momenta in the rotating frame.

    Components are binary64 floats or double-words; the primaries sit at
    ``(mu, 0)`` and ``(mu - 1, 0)``.
    """

    q1: Any
    q2: Any
    p1: Any
    p2: Any

    @classmethod
    def from_vector(cls: type[Self], values: np.ndarray) -> Self:
        """Unpack a state vector ``(q1, q2, p1, p2)``."""
        q1, q2, p1, p2 = values
        return cls(q1, q2, p1, p2)

    @property
    def components(self: CartesianState) -> tuple[Any, Any, Any, Any]:
        """The four coordinates in state-vector order."""
        return (self.q1, self.q2, self.p1, self.p2)

    @property
    def precision(self: CartesianState) -> Precision:
        """Precision the components are held in."""
        return arithmetic_of(*self.components).precision

    def as_vector(self: CartesianState, precision: Precision | None = None) -> np.ndarray:
        """Pack into a state vector of the requested precision."""
        arith = get_arithmetic(precision) if precision is not None else arithmetic_of(*self.components)
        return arith.vector(self.components)

    def to_binary64(self: CartesianState) -> tuple[float, float, float, float]:
        """Round every component to binary64."""
        return (float(self.q1), float(self.q2), float(self.p1), float(self.p2))
