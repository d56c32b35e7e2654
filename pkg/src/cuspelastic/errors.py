"""Exception types raised by the library."""

from __future__ import annotations


class CuspElasticError(Exception):
    """Base class for all library errors."""


class InputError(CuspElasticError, ValueError):
    """Arguments violate an operation's preconditions."""


class DomainError(CuspElasticError, ValueError):
    """A point lies outside the region where a formula is defined (x1 <= 0)."""


class SingularityError(CuspElasticError, ValueError):
    """Evaluation requested at the cusp or on the singular set x1 = 0."""


class GeometryError(CuspElasticError, ValueError):
    """Geometric parameters are inconsistent, e.g. the ball swallows an arc."""


class EvaluationError(CuspElasticError, ArithmeticError):
    """An integrand or stencil produced a non-finite value."""

    def __init__(self, message: str, abscissa: float | tuple[float, ...] | None = None):
        super().__init__(message)
        self.abscissa = abscissa


class ConvergenceError(CuspElasticError, RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget."""

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
