"""Plane elastostatics of a singular displacement field on a cusped lens.

Modules:
    numerics: finite differences, adaptive quadrature, limit fitting.
    geometry: the tangent-circle family, lens domain and punctured boundary.
    fields: displacement, gradient, strain and cusp behaviour.
    elasticity: Airy potential, stress, Lamé fields, residual checks.
    boundary: tractions, moments, force/couple/energy integrals and limits.
    cli: command-line front end (``cuspelastic`` / ``python -m cuspelastic``).
"""

from ._kernels import BACKEND
from .errors import (
    ConvergenceError,
    CuspElasticError,
    DomainError,
    EvaluationError,
    GeometryError,
    InputError,
    SingularityError,
)
from .geometry import LensDomain, Point2

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConvergenceError",
    "CuspElasticError",
    "DomainError",
    "EvaluationError",
    "GeometryError",
    "InputError",
    "SingularityError",
    "LensDomain",
    "Point2",
    "__version__",
]
