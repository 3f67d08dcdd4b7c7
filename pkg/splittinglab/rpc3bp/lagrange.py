"""Lagrange points and the spectra of their linearizations."""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Any, Self

import numpy as np

from numerics.exceptions import NumericalError
from numerics.precision import Precision, get_arithmetic
from numerics.roots import find_root

from .exceptions import LagrangePointError, SpectrumError
from .hamiltonian import gradient, jacobian
from .states import CartesianState

if TYPE_CHECKING:
    from collections.abc import Iterator

    from numerics.precision import Arithmetic

    from .params import MuParam

logger = logging.getLogger(__name__)

# Distance kept from a primary when bracketing the collinear points.
PRIMARY_GAP = 1e-9


class LagrangeLabel(str, Enum):
    """Names of the five equilibria."""

    L1 = "L1"
    L2 = "L2"
    L3 = "L3"
    L4 = "L4"
    L5 = "L5"

    @classmethod
    def choices(cls: type[Self]) -> list[tuple[str, str]]:
        """Return list of (value, label) tuples."""
        return [(member.value, member.value) for member in cls]

    @classmethod
    def from_str(cls: type[Self], value: str) -> Self:
        """Parse a label, case-insensitively."""
        try:
            return cls(value.upper())
        except ValueError as e:
            msg = f"Invalid Lagrange point: {value}. Must be one of {[m.value for m in cls]}"
            raise ValueError(msg) from e

    def __str__(self: Self) -> str:
        """Return string representation."""
        return self.value


@dataclass(frozen=True)
class Linearization:
    """Jacobian at an equilibrium with its eigen-decomposition.

    For a saddle-centre the eigenvalues are ordered ``(+nu, -nu, +i omega,
    -i omega)``; otherwise they are sorted by real then imaginary part.
    Eigenvectors are the columns of ``eigenvectors``.
    """

    jacobian: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    saddle_centre: bool

    @property
    def hyperbolic_rate(self: Linearization) -> float:
        """The positive real eigenvalue nu."""
        self._require_saddle_centre()
        return float(self.eigenvalues[0].real)

    @property
    def elliptic_frequency(self: Linearization) -> float:
        """The positive frequency omega of the imaginary pair."""
        self._require_saddle_centre()
        return float(self.eigenvalues[2].imag)

    @property
    def unstable_direction(self: Linearization) -> np.ndarray:
        """Real unit eigenvector of +nu."""
        self._require_saddle_centre()
        return self.eigenvectors[:, 0].real.copy()

    @property
    def stable_direction(self: Linearization) -> np.ndarray:
        """Real unit eigenvector of -nu."""
        self._require_saddle_centre()
        return self.eigenvectors[:, 1].real.copy()

    def _require_saddle_centre(self: Linearization) -> None:
        if not self.saddle_centre:
            msg = f"spectrum {np.round(self.eigenvalues, 12)} is not one real pair and one imaginary pair"
            raise SpectrumError(msg)


@dataclass(frozen=True)
class LagrangePoint:
    """One equilibrium with its linearization."""

    label: LagrangeLabel
    state: CartesianState
    linearization: Linearization
    gradient_norm: float

    @property
    def eigenvalues(self: LagrangePoint) -> np.ndarray:
        """The four eigenvalues."""
        return self.linearization.eigenvalues

    @property
    def eigenvectors(self: LagrangePoint) -> np.ndarray:
        """Eigenvectors as columns."""
        return self.linearization.eigenvectors


@dataclass(frozen=True)
class LagrangeSet:
    """All five equilibria for one mass ratio."""

    mu: float
    points: dict[LagrangeLabel, LagrangePoint]

    def __getitem__(self: LagrangeSet, label: LagrangeLabel | str) -> LagrangePoint:
        """Look a point up by label."""
        key = label if isinstance(label, LagrangeLabel) else LagrangeLabel.from_str(label)
        return self.points[key]

    def __iter__(self: LagrangeSet) -> Iterator[LagrangePoint]:
        """Iterate in label order."""
        return iter(self.points[label] for label in LagrangeLabel)

    @property
    def l3(self: LagrangeSet) -> LagrangePoint:
        """The collinear point beyond the larger primary."""
        return self.points[LagrangeLabel.L3]


def _nullvector(matrix: np.ndarray) -> np.ndarray:
    _, _, vh = np.linalg.svd(matrix)
    v = vh[-1].conj()
    pivot = v[np.argmax(np.abs(v))]
    return v * (abs(pivot) / pivot) / np.linalg.norm(v)


def linearize(point: CartesianState, m: MuParam) -> Linearization:
    """Linearize the flow at an equilibrium.

    The characteristic polynomial of a Hamiltonian 4x4 matrix is even,
    ``lam^4 + c2 lam^2 + det = 0``, so the spectrum follows from one quadratic
    in ``lam^2`` solved without cancellation.
    """
    matrix = jacobian(point, m)
    c2 = -0.5 * float(np.trace(matrix @ matrix))
    c0 = float(np.linalg.det(matrix))
    disc = c2 * c2 - 4.0 * c0
    saddle_centre = disc >= 0 and c0 < 0
    root = cmath.sqrt(disc)
    large = -0.5 * (c2 + (root if c2 >= 0 else -root))
    small = c0 / large if large != 0 else 0.0
    squares = [large, small]

    if saddle_centre:
        s_pos = max(squares, key=lambda s: s.real).real
        s_neg = min(squares, key=lambda s: s.real).real
        nu, omega = math.sqrt(s_pos), math.sqrt(-s_neg)
        eigenvalues = np.array([nu, -nu, 1j * omega, -1j * omega], dtype=complex)
    else:
        roots = [cmath.sqrt(s) for s in squares]
        eigenvalues = np.array(sorted([*roots, *(-r for r in roots)], key=lambda z: (-z.real, -z.imag)), dtype=complex)

    eigenvectors = np.column_stack([_nullvector(matrix - lam * np.eye(4)) for lam in eigenvalues])
    return Linearization(matrix, eigenvalues, eigenvectors, saddle_centre)


def _collinear_slope(x: Any, mu: Any) -> Any:
    # dh/dq1 on the corotation slice q2 = 0, p = (0, q1).
    d1 = x - mu
    d2 = x - mu + 1
    return (1 - mu) * d1 / abs(d1 * d1 * d1) + mu * d2 / abs(d2 * d2 * d2) - x


def _collinear(label: LagrangeLabel, m: MuParam, arith: Arithmetic) -> Any:
    mu = m.mu_in(arith)
    brackets = {
        LagrangeLabel.L1: (m.mu - 1 + PRIMARY_GAP, m.mu - PRIMARY_GAP),
        LagrangeLabel.L2: (-3.0, m.mu - 1 - PRIMARY_GAP),
        LagrangeLabel.L3: (m.mu + 0.5, 3.0),
    }
    tol = 64 * arith.epsilon
    try:
        return find_root(lambda x: _collinear_slope(x, mu), bracket=brackets[label], tol=tol, precision=arith.precision)
    except NumericalError as e:
        msg = f"could not locate {label} for mu={m.mu!r}: {e}"
        raise LagrangePointError(msg) from e


def _equilateral(label: LagrangeLabel, m: MuParam, arith: Arithmetic) -> CartesianState:
    q1 = m.mu_in(arith) - 0.5
    q2 = arith.sqrt(arith.real(3)) * 0.5
    if label is LagrangeLabel.L4:
        q2 = -q2
    return CartesianState(q1, q2, -q2, q1)


def lagrange_points(m: MuParam, precision: Precision = Precision.NATIVE) -> LagrangeSet:
    """Locate all five equilibria and linearize at each.

    L1 lies between the primaries, L2 beyond the smaller one and L3 beyond
    the larger one. L4 and L5 complete equilateral triangles with the
    primaries, L5 in the upper half-plane.
    """
    arith = get_arithmetic(precision)
    points: dict[LagrangeLabel, LagrangePoint] = {}
    for label in LagrangeLabel:
        if label in {LagrangeLabel.L4, LagrangeLabel.L5}:
            state = _equilateral(label, m, arith)
        else:
            x = _collinear(label, m, arith)
            state = CartesianState(x, arith.real(0), arith.real(0), x)
        grad = np.array([float(g) for g in gradient(state, m)])
        points[label] = LagrangePoint(label, state, linearize(state, m), float(np.linalg.norm(grad)))
        logger.debug("lagrange point located", extra={"label": str(label), "gradient_norm": points[label].gradient_norm})
    return LagrangeSet(m.mu, points)
