"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class AccuracyError(RuntimeError):
    """A numerical routine failed to reach the requested tolerance.

    Carries the best available estimate and an error bound so callers can
    decide whether the partial result is still usable.
    """

    def __init__(self, message, best_estimate=None, error_bound=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_bound = error_bound


class ClosedFormUnavailableError(LookupError):
    """No closed form is registered for the requested moment combination."""


class DegenerateDenominatorError(ArithmeticError):
    """A sample-level estimator denominator is zero, negative, or non-finite."""


class DegeneracyError(ArithmeticError):
    """A population-level functional vanishes, making an estimator degenerate."""


class InfeasibleError(RuntimeError):
    """Every point of an optimization grid was infeasible."""


class SimulationError(RuntimeError):
    """A Monte Carlo run produced no usable replications."""


class FixtureError(FileNotFoundError):
    """A bundled data fixture could not be located."""


class AccuracyWarning(UserWarning):
    """Numerical differentiation looked ill-conditioned; results may be noisy."""
