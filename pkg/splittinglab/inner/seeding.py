"""Asymptotic initial conditions for the inner solutions by Picard iteration.

The inner equation ``Z' = A Z + R[Z]`` with ``A = diag(0, i, -i)`` has the
fixed-point form

    W(U) = s * int_0^inf R1(U - s sigma) dsigma
    X(U) =  i * int_0^inf exp(-tau) R2(U - i tau) dtau
    Y(U) = -i * int_0^inf exp(-tau) R3(U + i tau) dtau

where ``s = +1`` for the unstable solution and ``-1`` for the stable one.
Every ray stays inside the domain of the solution it builds, and the kernels
decay along it. Iterates are evaluated in binary64.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from numerics.quadrature import half_line_quadrature

from .exceptions import InnerDomainError, SeedResidualError
from .hamiltonian import InnerKind, InnerState, PowerBranch, remainder

if TYPE_CHECKING:
    from collections.abc import Callable

logger = logging.getLogger(__name__)

type Graph = Callable[[complex], tuple[complex, complex, complex]]

SEED_TOL = 1e-14
MAX_SEED_ITERATES = 2
# Largest accepted |Z_k - Z_(k-1)| / |Z_k| for the last iterate.
CONTRACTION_LIMIT = 0.1
# exp(-tau) underflows past this.
KERNEL_CUTOFF = 700.0
TAIL_CUTOFF = 1e12


@dataclass(frozen=True)
class InnerSeed:
    """The seed ``Z(U0)`` with the size of its last Picard correction."""

    U: complex
    Z: tuple[complex, complex, complex]
    iterates: int
    contraction: float | None


def _zero(U: complex) -> tuple[complex, complex, complex]:  # noqa: N803
    del U
    return (0j, 0j, 0j)


def _norm(z: tuple[complex, ...]) -> float:
    return math.sqrt(sum(abs(c) ** 2 for c in z))


def _distance(a: tuple[complex, ...], b: tuple[complex, ...]) -> float:
    return _norm(tuple(p - q for p, q in zip(a, b, strict=True)))


def picard_step(previous: Graph, kind: InnerKind, branch: PowerBranch, tol: float = SEED_TOL) -> Graph:
    """Apply the fixed-point operator once to ``previous``."""

    def remainder_at(U: complex) -> tuple[complex, complex, complex]:  # noqa: N803
        w, x, y = previous(U)
        return remainder(InnerState(U, w, x, y), branch)

    side = kind.side

    def graph(U: complex) -> tuple[complex, complex, complex]:  # noqa: N803
        def w_integrand(sigma: float) -> complex:
            if sigma > TAIL_CUTOFF:
                return 0j
            return remainder_at(U - side * sigma)[0]

        def x_integrand(tau: float) -> complex:
            if tau > KERNEL_CUTOFF:
                return 0j
            return math.exp(-tau) * remainder_at(U - 1j * tau)[1]

        def y_integrand(tau: float) -> complex:
            if tau > KERNEL_CUTOFF:
                return 0j
            return math.exp(-tau) * remainder_at(U + 1j * tau)[2]

        w = side * half_line_quadrature(w_integrand, scale=abs(U), target_tol=tol).value
        x = 1j * half_line_quadrature(x_integrand, target_tol=tol).value
        y = -1j * half_line_quadrature(y_integrand, target_tol=tol).value
        return (complex(w), complex(x), complex(y))

    return graph


def picard_seed(
    kind: InnerKind,
    U0: complex,  # noqa: N803
    branch: PowerBranch = PowerBranch.UPPER,
    iterates: int = MAX_SEED_ITERATES,
    tol: float = SEED_TOL,
) -> InnerSeed:
    """Evaluate the ``iterates``-th Picard iterate from ``Z = 0`` at ``U0``.

    With two iterates the size of the last correction is checked against
    ``CONTRACTION_LIMIT``; a larger correction means ``U0`` is too close to
    the singularity for the iteration to have settled.
    """
    if not 1 <= iterates <= MAX_SEED_ITERATES:
        msg = f"seed_iterates must be 1 or {MAX_SEED_ITERATES}, got {iterates}"
        raise InnerDomainError(msg)
    graphs: list[Graph] = [_zero]
    for _ in range(iterates):
        graphs.append(picard_step(graphs[-1], kind, branch, tol))

    z = graphs[-1](U0)
    contraction = None
    if iterates > 1:
        previous = graphs[-2](U0)
        size = _norm(z)
        contraction = _distance(z, previous) / size if size > 0 else math.inf
        if contraction > CONTRACTION_LIMIT:
            msg = f"Picard correction {contraction:.2e} at U0={U0!r} exceeds {CONTRACTION_LIMIT}; start farther out"
            raise SeedResidualError(msg)
        if contraction > 0.1 * CONTRACTION_LIMIT:
            logger.warning("seed correction close to its limit", extra={"U0": str(U0), "contraction": contraction})
    logger.debug("inner seed", extra={"kind": str(kind), "U0": str(U0), "iterates": iterates, "contraction": contraction})
    return InnerSeed(U=U0, Z=z, iterates=iterates, contraction=contraction)
