"""The inner equation near the separatrix singularity and its Stokes constant."""

from .branches import InnerPath, InnerSolution, plug_back_residual, solve_branch, weighted_norm
from .hamiltonian import (
    InnerKind,
    InnerState,
    KPartials,
    PowerBranch,
    calJ,
    calK,
    calK_partials,
    cube_root,
    inner_hamiltonian,
    inner_rhs,
    remainder,
)
from .seeding import InnerSeed, picard_seed
from .stokes import (
    RhoEstimate,
    StokesEstimate,
    ThetaSample,
    combine_estimates,
    conjugate_mismatch,
    extract_rho,
    stokes_constant,
    stokes_extract,
)

__all__ = [
    "InnerKind",
    "InnerPath",
    "InnerSeed",
    "InnerSolution",
    "InnerState",
    "KPartials",
    "PowerBranch",
    "RhoEstimate",
    "StokesEstimate",
    "ThetaSample",
    "calJ",
    "calK",
    "calK_partials",
    "combine_estimates",
    "conjugate_mismatch",
    "cube_root",
    "extract_rho",
    "inner_hamiltonian",
    "inner_rhs",
    "picard_seed",
    "plug_back_residual",
    "remainder",
    "solve_branch",
    "stokes_constant",
    "stokes_extract",
    "weighted_norm",
]
