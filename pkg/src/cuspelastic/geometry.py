"""Circle family, lens domain and punctured-boundary construction.

Every circle of the family passes through the origin and is centred on the
positive x1-axis: the member with parameter ``c`` has centre ``(c, 0)`` and
radius ``c``, so ``psi_c(x) = ((x1 - c)**2 + x2**2) / c**2 = 1``.  In polar
coordinates ``(r, theta)`` about the origin it reads ``r = 2c cos(theta)``.
The lens is the region between the member ``c = 1`` and the member
``c = R``; all members touch at the origin, which is the cusp.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, GeometryError, InputError, SingularityError

__all__ = [
    "Point2",
    "PolarPoint",
    "CircleId",
    "LensDomain",
    "ArcKind",
    "PointClass",
    "BoundaryArc",
    "IntersectionSet",
    "BOUNDARY_TOL",
    "psi",
    "circle_point",
    "circle_of_point",
    "classify",
    "polar_maps",
    "intersection_points",
    "unit_tangent",
    "outward_normal",
    "punctured_arcs",
    "punctured_boundary",
]

HALF_PI = 0.5 * math.pi
BOUNDARY_TOL = 1e-10


class Point2(NamedTuple):
    x1: float
    x2: float


class PolarPoint(NamedTuple):
    r: float
    theta: float


@dataclass(frozen=True)
class CircleId:
    """Member ``c`` of the circle family, optionally shifted right by ``d``.

    The shifted member is centred at ``(c + d, 0)`` with radius ``c``; only
    :func:`unit_tangent` and :func:`circle_point` accept ``d > 0``.
    """

    c: float
    d: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c > 0):
            raise InputError(f"circle parameter c must be positive, got {self.c}")
        if not (math.isfinite(self.d) and self.d >= 0):
            raise InputError(f"offset d must be nonnegative, got {self.d}")


@dataclass(frozen=True)
class LensDomain:
    """Lens between the circles ``c = 1`` and ``c = R``, with material constant ``k``."""

    R: float
    k: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.R) and self.R > 1):
            raise InputError(f"R must exceed 1, got {self.R}")
        if not (math.isfinite(self.k) and self.k >= 0):
            raise InputError(f"k must be nonnegative, got {self.k}")


class ArcKind(enum.Enum):
    OUTER = "outer-circle"
    INNER = "inner-circle"
    BALL_UPPER = "ball-upper"
    BALL_LOWER = "ball-lower"


class PointClass(enum.Enum):
    INTERIOR = "interior"
    INNER_BOUNDARY = "inner-boundary"
    OUTER_BOUNDARY = "outer-boundary"
    EXTERIOR = "exterior"
    CUSP = "cusp"


@dataclass(frozen=True)
class BoundaryArc:
    """One of the four pieces of the boundary of the punctured lens.

    Attributes:
        kind: which piece.
        radius: circle parameter ``c`` for circle arcs, ball radius ``a``
            for ball arcs.
        theta_start, theta_end: polar angle at the start and end of the
            traversal used by the reference closed forms.  The outer arc runs
            from theta_A down to theta_B, the inner arc from theta_C up to
            theta_D, the upper ball arc from theta_D to theta_A and the lower
            one from theta_B to theta_C.
        normal_sign: the outward normal of the punctured region equals
            ``normal_sign`` times the arc's own radial direction, i.e.
            ``(cos 2θ, sin 2θ)`` on a family circle and ``(cos θ, sin θ)``
            on the ball.
        reference_sign: a reference closed form for a boundary integral over
            this arc equals ``reference_sign`` times the physical integral
            (outward normal, positive arclength).  It is ``-1`` on both
            circle arcs and ``+1`` on the ball arcs.
    """

    kind: ArcKind
    radius: float
    theta_start: float
    theta_end: float
    normal_sign: int
    reference_sign: int

    def __post_init__(self):
        if self.theta_start == self.theta_end:
            raise GeometryError(f"{self.kind.value} arc has zero angular extent")
        if self.is_circle and max(abs(self.theta_start), abs(self.theta_end)) > HALF_PI:
            raise GeometryError("circle arc angles must lie in [-pi/2, pi/2]")

    @property
    def is_circle(self) -> bool:
        return self.kind in (ArcKind.OUTER, ArcKind.INNER)

    @property
    def theta_lo(self) -> float:
        return min(self.theta_start, self.theta_end)

    @property
    def theta_hi(self) -> float:
        return max(self.theta_start, self.theta_end)

    def point(self, theta: float) -> Point2:
        if self.is_circle:
            return circle_point(self.radius, theta)
        return Point2(self.radius * math.cos(theta), self.radius * math.sin(theta))

    def speed(self) -> float:
        """|ds/dθ|: ``2c`` on a family circle, ``a`` on the ball."""
        return 2.0 * self.radius if self.is_circle else self.radius

    def describe(self) -> str:
        direction = "decreasing" if self.theta_end < self.theta_start else "increasing"
        return (
            f"{self.kind.value}: radius {self.radius:.6g}, theta {self.theta_start:.6g} -> "
            f"{self.theta_end:.6g} ({direction}), reference value = {self.reference_sign:+d} x physical"
        )


@dataclass(frozen=True)
class IntersectionSet:
    """Points where the ball ``|x| = a`` meets the two bounding circles.

    A and B lie on the outer circle (upper and lower half), D and C on the
    inner one.
    """

    A: Point2
    B: Point2
    C: Point2
    D: Point2
    theta_A: float
    theta_B: float
    theta_C: float
    theta_D: float


def _as_circle(c: CircleId | float) -> CircleId:
    return c if isinstance(c, CircleId) else CircleId(float(c))


def psi(c: CircleId | float, p: Point2) -> float:
    """Value of ``psi_c`` at ``p``; equal to 1 on the circle."""
    circ = _as_circle(c)
    return ((p[0] - circ.c - circ.d) ** 2 + p[1] ** 2) / circ.c**2


def circle_point(c: CircleId | float, theta: float) -> Point2:
    """Point of the circle ``c`` seen from the origin at polar angle ``theta``.

    For ``|theta| = pi/2`` on an unshifted circle the exact cusp ``(0, 0)``
    is returned; :func:`classify` reports it as ``PointClass.CUSP``.
    """
    circ = _as_circle(c)
    if abs(theta) > HALF_PI:
        raise InputError(f"theta must lie in [-pi/2, pi/2], got {theta}")
    if circ.d == 0.0 and abs(theta) == HALF_PI:
        return Point2(0.0, 0.0)
    cos_t = math.cos(theta)
    return Point2(2.0 * circ.c * cos_t * cos_t + circ.d, circ.c * math.sin(2.0 * theta))


def circle_of_point(p: Point2) -> float:
    """The unique family parameter ``c`` whose circle passes through ``p``."""
    x1, x2 = p
    if not x1 > 0:
        raise DomainError(f"x1 must be positive to lie on a family circle, got {x1}")
    return (x1 * x1 + x2 * x2) / (2.0 * x1)


def classify(domain: LensDomain, p: Point2) -> PointClass:
    x1, x2 = p
    if x1 == 0.0 and x2 == 0.0:
        return PointClass.CUSP
    if x1 <= 0.0:
        return PointClass.EXTERIOR
    if abs(psi(1.0, p) - 1.0) <= BOUNDARY_TOL:
        return PointClass.INNER_BOUNDARY
    if abs(psi(domain.R, p) - 1.0) <= BOUNDARY_TOL:
        return PointClass.OUTER_BOUNDARY
    c = circle_of_point(p)
    return PointClass.INTERIOR if 1.0 < c < domain.R else PointClass.EXTERIOR


def polar_maps(p: Point2) -> tuple[PolarPoint, tuple[float, float]]:
    """Origin-centred polar pair and the circle-centred pair ``(rho, phi)``.

    ``rho`` is the radius ``c`` of the circle through ``p`` and ``phi`` the
    angle seen from its centre, which is exactly ``2 theta``.
    """
    x1, x2 = p
    if x1 == 0.0 and x2 == 0.0:
        raise SingularityError("polar angle is undefined at the cusp")
    if not x1 > 0:
        raise DomainError(f"x1 must be positive, got {x1}")
    theta = math.atan2(x2, x1)
    return PolarPoint(math.hypot(x1, x2), theta), (circle_of_point(p), 2.0 * theta)


def intersection_points(c1: float, c2: float, a: float) -> IntersectionSet:
    """Intersections of ``|x| = a`` with the circles ``c1`` (outer) and ``c2`` (inner).

    Raises:
        InputError: ``a <= 0`` or ``c2 > c1``.
        GeometryError: ``a > 2 c2``; the ball would then contain the whole
            inner arc.
    """
    if not (a > 0 and c2 > 0):
        raise InputError(f"need a > 0 and c2 > 0, got a={a}, c2={c2}")
    if c2 > c1:
        raise InputError(f"inner circle c2={c2} exceeds outer c1={c1}")
    if a > 2.0 * c2:
        raise GeometryError(f"ball radius a={a} exceeds the inner diameter 2*c2={2 * c2}")

    def upper(c: float) -> tuple[Point2, float]:
        x1 = a * a / (2.0 * c)
        x2 = (a / (2.0 * c)) * math.sqrt(max(4.0 * c * c - a * a, 0.0))
        return Point2(x1, x2), math.acos(min(a / (2.0 * c), 1.0))

    A, th_a = upper(c1)
    D, th_d = upper(c2)
    return IntersectionSet(
        A=A,
        B=Point2(A.x1, -A.x2),
        C=Point2(D.x1, -D.x2),
        D=D,
        theta_A=th_a,
        theta_B=-th_a,
        theta_C=-th_d,
        theta_D=th_d,
    )


def unit_tangent(c: CircleId | float, p: Point2, tol: float = 1e-8) -> tuple[float, float]:
    """Unit tangent ``(x2/c, (c + d - x1)/c)`` of the circle at ``p``.

    At the points where the circle meets the x1-axis this is ``(0, +-1)``.
    """
    circ = _as_circle(c)
    if abs(psi(circ, p) - 1.0) > tol:
        raise InputError(f"point {tuple(p)} is not on circle c={circ.c}, d={circ.d}")
    return p[1] / circ.c, (circ.c + circ.d - p[0]) / circ.c


def outward_normal(arc: BoundaryArc, theta: float) -> tuple[float, float]:
    """Unit normal pointing out of the punctured region at angle ``theta``."""
    slack = 1e-12 * max(1.0, abs(theta))
    if not (arc.theta_lo - slack <= theta <= arc.theta_hi + slack):
        raise InputError(
            f"theta={theta} outside the {arc.kind.value} arc [{arc.theta_lo}, {arc.theta_hi}]"
        )
    s = float(arc.normal_sign)
    if arc.is_circle:
        return s * math.cos(2.0 * theta), s * math.sin(2.0 * theta)
    return s * math.cos(theta), s * math.sin(theta)


def punctured_arcs(c2: float, c1: float, a: float) -> list[BoundaryArc]:
    """The four boundary arcs of the lens between ``c2`` and ``c1`` minus ``|x| < a``.

    Order: outer, inner, upper ball, lower ball.
    """
    if not (0 < a < 2.0 * c2):
        raise GeometryError(f"ball radius must satisfy 0 < a < 2*c2 = {2 * c2}, got {a}")
    pts = intersection_points(c1, c2, a)
    return [
        BoundaryArc(ArcKind.OUTER, c1, pts.theta_A, pts.theta_B, +1, -1),
        BoundaryArc(ArcKind.INNER, c2, pts.theta_C, pts.theta_D, -1, -1),
        BoundaryArc(ArcKind.BALL_UPPER, a, pts.theta_D, pts.theta_A, -1, +1),
        BoundaryArc(ArcKind.BALL_LOWER, a, pts.theta_B, pts.theta_C, -1, +1),
    ]


def punctured_boundary(domain: LensDomain, a: float) -> list[BoundaryArc]:
    return punctured_arcs(1.0, domain.R, a)
