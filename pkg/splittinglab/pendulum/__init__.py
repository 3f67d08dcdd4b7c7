"""The averaged pendulum: potential, separatrix, constant A and the Hamiltonian split."""

from .constant_a import (
    PUBLISHED_A,
    ConstantAMethod,
    ConstantAResult,
    constant_A_lambda_integral,
    constant_A_x_integral,
    lambda_integrand,
    reference_A,
    x_integrand,
)
from .hamiltonian_split import (
    HamiltonianSplit,
    f_pend,
    h1_eval,
    h_osc,
    h_pend_scaled,
    scaled_hamiltonian,
    split_hamiltonian,
)
from .potential import (
    LAMBDA_0,
    SADDLE_EIGENVALUE,
    SEPARATRIX_ENERGY,
    V_SECOND_AT_SADDLE,
    PendulumState,
    hamiltonian_pend,
    pendulum_field,
    pendulum_rhs,
    potential_excess,
    potential_V,
    potential_V_prime,
    potential_V_second,
)
from .separatrix import (
    SeparatrixHandle,
    SeparatrixSample,
    SeparatrixSide,
    action_on_level,
    separatrix,
    separatrix_handle,
)

__all__ = [
    "LAMBDA_0",
    "PUBLISHED_A",
    "SADDLE_EIGENVALUE",
    "SEPARATRIX_ENERGY",
    "V_SECOND_AT_SADDLE",
    "ConstantAMethod",
    "ConstantAResult",
    "HamiltonianSplit",
    "PendulumState",
    "SeparatrixHandle",
    "SeparatrixSample",
    "SeparatrixSide",
    "action_on_level",
    "constant_A_lambda_integral",
    "constant_A_x_integral",
    "f_pend",
    "h1_eval",
    "h_osc",
    "h_pend_scaled",
    "hamiltonian_pend",
    "lambda_integrand",
    "pendulum_field",
    "pendulum_rhs",
    "potential_V",
    "potential_V_prime",
    "potential_V_second",
    "potential_excess",
    "reference_A",
    "scaled_hamiltonian",
    "separatrix",
    "separatrix_handle",
    "split_hamiltonian",
    "x_integrand",
]
