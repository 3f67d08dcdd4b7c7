"""The mass parameter."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from .exceptions import MuRangeError

if TYPE_CHECKING:
    from numerics.precision import Arithmetic


@dataclass(frozen=True)
class MuParam:
    """Mass ratio of the primaries and its quarter root."""

    mu: float

    def __post_init__(self: MuParam) -> None:
        """Check the mass ratio lies in (0, 1/2]."""
        if not (isinstance(self.mu, int | float) and 0.0 < self.mu <= 0.5):
            msg = f"mu must lie in (0, 1/2], got {self.mu!r}"
            raise MuRangeError(msg)

    @property
    def delta(self: MuParam) -> float:
        """The quarter root of mu."""
        return math.sqrt(math.sqrt(self.mu))

    def mu_in(self: MuParam, arith: Arithmetic) -> Any:
        """Mass ratio as a scalar of the given back end."""
        return arith.real(self.mu)

    def delta_in(self: MuParam, arith: Arithmetic) -> Any:
        """Quarter root of mu in the given back end."""
        return arith.sqrt(arith.sqrt(arith.real(self.mu)))
