"""Exception hierarchy shared by every package of the lab."""


class LabError(Exception):
    """Base exception for the splitting lab."""


class ParameterError(LabError):
    """Raised when an input or a configuration value is invalid."""


class NumericalError(LabError):
    """Raised when a numerical procedure fails to deliver its guarantee."""


class IntegratorConfigError(ParameterError):
    """Raised when an integrator configuration is inconsistent."""


class StepSizeUnderflowError(NumericalError):
    """Raised when the adaptive step collapses below the resolvable size."""


class NonFiniteEvaluationError(NumericalError):
    """Raised when a right-hand side, integrand or event returns a non-finite value."""


class MaxStepsExceededError(NumericalError):
    """Raised when an integration exhausts its step budget."""


class EventNotFoundError(NumericalError):
    """Raised when no admissible event crossing occurs before the horizon."""


class QuadratureConvergenceError(NumericalError):
    """Raised when quadrature does not reach its target within the allowed levels."""


class RootBracketError(NumericalError):
    """Raised when a bracket does not enclose a sign change."""


class RootConvergenceError(NumericalError):
    """Raised when a root iteration stalls or its derivative vanishes."""


class TrajectoryRangeError(ParameterError):
    """Raised when a dense trajectory is evaluated outside its time span."""
