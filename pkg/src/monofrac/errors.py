"""Exception types shared across the package."""


class MonofracError(Exception):
    """Base class for errors raised by this package."""


class DomainError(MonofracError):
    """An evaluation point or bracket lies outside the permitted domain."""


class EmptyGridError(MonofracError):
    """Grid construction dropped every point."""


class ConvergenceError(MonofracError):
    """An iterative routine failed to reach the requested tolerance."""


class BasePointError(MonofracError):
    """Evaluation requested inside the exclusion gap around the base point."""


class InsufficientDerivativesError(MonofracError):
    """A derivative stack is shorter than the requested order."""


class HypothesisViolationError(MonofracError):
    """A precondition of a verifier (sign condition, nonvanishing
    derivative) does not hold on the sampled grid."""


class StepInstabilityError(MonofracError):
    """An ODE trajectory left the admissible region."""


class ConfigError(MonofracError):
    """Suite configuration is missing, malformed, or inconsistent."""
