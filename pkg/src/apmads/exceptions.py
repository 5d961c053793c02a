"""Error types raised across the package."""


class ApmadsError(Exception):
    """Base class for all package errors."""


class InvalidInputError(ApmadsError, ValueError):
    """An argument is outside its documented domain."""


class InvalidSigmaError(InvalidInputError):
    """A standard deviation is non-positive or above the observable cap."""


class NoIncumbentError(ApmadsError, LookupError):
    """The cache holds no feasible evaluated point to minimise over."""


class UndefinedComparisonError(ApmadsError, ValueError):
    """A p-value was requested for an unevaluated or infeasible point."""


class UnknownProblemError(ApmadsError, ValueError):
    """A problem name is not in the registry."""


class InfeasibleStartError(ApmadsError, ValueError):
    """A run was started from a point outside the problem domain."""


class ConfigError(ApmadsError, ValueError):
    """Solver configuration fields are inconsistent."""


class DegenerateNormalizationError(ApmadsError, ValueError):
    """Accuracy cannot be normalised: start and optimum share one value."""
