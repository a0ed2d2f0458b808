"""Exception and warning types shared across the package."""


class BspsError(Exception):
    """Base class for all package errors."""


class DomainError(BspsError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ParseError(BspsError, ValueError):
    """A data file could not be parsed; the message carries the line number."""


class IntegrationError(BspsError, RuntimeError):
    """Adaptive quadrature failed to reach the requested accuracy."""


class ConvergenceError(BspsError, RuntimeError):
    """Every optimizer start failed to produce a usable optimum."""


class NonFiniteError(BspsError, ArithmeticError):
    """A likelihood term evaluated to nan/inf; message names the observation."""


class SingularityError(BspsError, RuntimeError):
    """The observed information matrix is not invertible."""


class NestingError(BspsError, ValueError):
    """Likelihood-ratio test called with models that cannot be nested."""


class MismatchError(BspsError, ValueError):
    """Fit results being compared were not computed on the same data."""


class ConvergenceWarning(UserWarning):
    """A truncated series or iterative routine stopped short of its target."""


class SingularityWarning(UserWarning):
    """The observed information matrix is close to singular."""


class BoundaryWarning(UserWarning):
    """An estimate is pinned at the edge of its admissible interval."""


class NumericalWarning(UserWarning):
    """Values were clipped or adjusted to keep a computation finite."""
