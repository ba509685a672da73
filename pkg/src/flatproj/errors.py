"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class AccuracyError(ArithmeticError):
    """The inputs admit no result at the accuracy the routine guarantees."""


class TransientZoneError(ArithmeticError):
    """The evaluation point falls outside the transient zone of a layer."""


class ConvergenceError(ArithmeticError):
    """An iterative refinement failed to reach its convergence gate."""
