"""Settings shared by the manifold computations."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Self

from numerics.integrator import IntegratorConfig
from numerics.precision import Precision, get_arithmetic
from pendulum.potential import LAMBDA_0

from .exceptions import MuFloorError, SectionRangeError, SeedOffsetError

EPSILON_RANGE = (1e-9, 1e-5)
MU_FLOOR = 3e-5
# Below this mass ratio the splitting is too small for binary64.
NATIVE_MU_FLOOR = 1e-3
# The splitting must exceed this multiple of the error floor.
FLOOR_FACTOR = 100.0


class SectionKind(str, Enum):
    """Which angle defines a section."""

    THETA = "theta"
    LAMBDA = "lambda"

    @classmethod
    def choices(cls: type[Self]) -> list[tuple[str, str]]:
        """Return list of (value, label) tuples."""
        return [(member.value, member.value.title()) for member in cls]

    def __str__(self: Self) -> str:
        """Return string representation."""
        return self.value


@dataclass(frozen=True)
class Section:
    """The half-line ``{theta = value}`` or the set ``{lam = value}``."""

    kind: SectionKind
    value: float

    def validate(self: Section) -> None:
        """Check the angle lies strictly between 0 and the turning point."""
        if not 0.0 < abs(self.value) < LAMBDA_0:
            msg = f"{self.kind} section at {self.value!r} is outside (0, {LAMBDA_0:.6f})"
            raise SectionRangeError(msg)

    def mirrored(self: Section) -> Section:
        """The section reflected through the q1 axis."""
        return Section(self.kind, -self.value)


@dataclass(frozen=True)
class SplittingConfig:
    """Seed, tolerances and safeguards of one splitting computation.

    The time budget of a branch is ``horizon_factor / sqrt(mu)``, the slow
    time scale of the separatrix.

    Times of flight are also reported from the point where a branch is
    ``arclength`` away from L3, which does not depend on the seed offset.
    """

    epsilon: float = 1e-7
    arclength: float = 1e-4
    rel_tol: float = 1e-12
    abs_tol: float = 1e-15
    precision: Precision = Precision.NATIVE
    horizon_factor: float = 60.0
    min_primary_distance: float = 1e-3
    root_tol: float = 1e-13
    max_steps: int = 2_000_000

    def __post_init__(self: SplittingConfig) -> None:
        """Validate the seed offset and the safeguards."""
        lo, hi = EPSILON_RANGE
        if not lo <= self.epsilon <= hi:
            msg = f"seed offset must lie in [{lo:g}, {hi:g}], got {self.epsilon!r}"
            raise SeedOffsetError(msg)
        if not self.arclength > self.epsilon:
            msg = f"arclength {self.arclength!r} must exceed the seed offset {self.epsilon!r}"
            raise SeedOffsetError(msg)
        if not self.horizon_factor > 0 or not self.min_primary_distance > 0:
            msg = "horizon_factor and min_primary_distance must be positive"
            raise SectionRangeError(msg)

    @property
    def integrator(self: SplittingConfig) -> IntegratorConfig:
        """Integrator settings for both branches."""
        return IntegratorConfig(
            rel_tol=self.rel_tol,
            abs_tol=self.abs_tol,
            precision=self.precision,
            max_steps=self.max_steps,
        )

    @property
    def error_floor(self: SplittingConfig) -> float:
        """Smallest splitting that can be trusted at these settings."""
        return FLOOR_FACTOR * max(self.rel_tol, get_arithmetic(self.precision).epsilon)

    def horizon(self: SplittingConfig, mu: float) -> float:
        """Unsigned time budget of a branch."""
        return self.horizon_factor / math.sqrt(mu)

    def with_overrides(self: SplittingConfig, **changes: Any) -> SplittingConfig:
        """Return a copy with some fields replaced."""
        return replace(self, **changes)


def check_mu_floor(mu: float) -> None:
    """Reject mass ratios below the supported floor."""
    if mu < MU_FLOOR:
        msg = f"mu={mu!r} is below the supported floor {MU_FLOOR:g}"
        raise MuFloorError(msg)
