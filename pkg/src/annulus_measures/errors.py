"""Exception types shared across the package."""


class DomainError(ValueError):
    """Evaluation requested outside a map's domain of analyticity."""


class NormalizationError(ValueError):
    """Coefficient table violates the unit-circle area normalization."""


class ValidationError(ValueError):
    """Input fails a structural or membership precondition."""


class DegenerateCurveError(ValueError):
    """Curve sample is degenerate (coincident or near-zero points)."""


class GridSpacingError(ValueError):
    """Sampled abscissae are not uniformly spaced."""


class SearchBudgetError(ValueError):
    """Combinatorial search would exceed its configured budget."""


class ConvergenceError(RuntimeError):
    """Iterative solver hit its iteration cap before converging."""
