"""Tractions, couples and strain energy on the punctured lens.

The punctured lens ``Ω_a(c2, c1)`` is the lens between circles ``c2 < c1``
with the ball ``|x| < a`` removed.  Its boundary has four arcs (see
:func:`cuspelastic.geometry.punctured_arcs`).  Every integral here is first
computed *physically*: outward normal of ``Ω_a``, positive arclength.  The
reference closed forms were derived with their own traversal and normal
choices; each arc carries ``reference_sign`` so that

    reference value = reference_sign * physical value

which is ``-1`` on the two circle arcs and ``+1`` on the ball arcs.

Quantities in the reference orientation:

* ``T2a = -(F2 integral over outer arc + F2 integral over inner arc)``,
  the equilibrium closure for the x2 force carried by the ball arcs.
* ``Γa = -(Γ^{c1} + Γ^{c2})`` for the couple.
"""

from __future__ import annotations

import math

import numpy as np
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence

from . import numerics
from ._kernels import lens_energy_integral
from .elasticity import MaterialPoint, stress
from .errors import ConvergenceError, GeometryError, InputError, SingularityError
from .fields import SymTensor2, displacement, displacement_on_circle
from .geometry import (
    HALF_PI,
    BoundaryArc,
    LensDomain,
    Point2,
    circle_point,
    outward_normal,
    punctured_arcs,
)

__all__ = [
    "TractionSample",
    "IntegralReport",
    "EnergyDecomposition",
    "ForceReport",
    "MomentReport",
    "EnergyReport",
    "LimitRow",
    "LimitReport",
    "DEFAULT_QUAD",
    "GAMMA_DISCLOSURE",
    "default_a_sequence",
    "traction",
    "traction_from_stress",
    "moment_density",
    "moment_from_traction",
    "ball_energy_density",
    "outer_force_closed_form",
    "inner_force_closed_form",
    "force_resultant_closed_form",
    "outer_moment_closed_form",
    "inner_moment_closed_form",
    "moment_resultant_closed_form",
    "energy_closed_forms",
    "energy_closed_forms_reference",
    "claimed_couple_limit",
    "total_force",
    "total_moment",
    "boundary_energy",
    "energy_report",
    "area_energy",
    "limit_report",
]

DEFAULT_QUAD = numerics.QuadConfig(abs_tol=1e-11, rel_tol=1e-12, max_subdivisions=2000)

GAMMA_DISCLOSURE = (
    "The couple closed forms for the two circle arcs tend to -2*pi*k and +2*pi*k as a -> 0, "
    "so the assembled couple Gamma_a tends to 0 (term by term: 8(pi/2)(c2^2 - c1^2) + "
    "2*pi(2c1^2 - 2c2^2) = 0). The reference statement gives Gamma = 4(R^2 - 1)*pi instead, "
    "which is recovered only if the 8c^2*theta*cos(2*theta) terms are dropped. Both values are "
    "reported side by side; neither is treated as ground truth."
)


class TractionSample(NamedTuple):
    F1: float
    F2: float


@dataclass(frozen=True)
class IntegralReport:
    """A boundary integral by quadrature, optionally next to a closed form."""

    name: str
    quadrature_value: float
    closed_form_value: Optional[float] = None
    orientation: str = ""
    abs_difference: Optional[float] = field(init=False)

    def __post_init__(self):
        diff = None
        if self.closed_form_value is not None:
            diff = abs(self.quadrature_value - self.closed_form_value)
        object.__setattr__(self, "abs_difference", diff)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "quadrature_value": self.quadrature_value,
            "closed_form_value": self.closed_form_value,
            "abs_difference": self.abs_difference,
            "orientation": self.orientation,
        }


@dataclass(frozen=True)
class EnergyDecomposition:
    """Boundary pieces of ``∫ u·σ·n ds`` over the punctured lens.

    All four are physical (outward normal, positive arclength), so
    ``total = V1 + V2 + W1 + W2`` equals the area integral of ``σ:e``,
    i.e. twice the strain energy.  ``energy`` is ``E_a = total / 2``.
    """

    V1: float
    V2: float
    W1: float
    W2: float
    total: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "total", math.fsum((self.V1, self.V2, self.W1, self.W2)))

    @property
    def energy(self) -> float:
        return 0.5 * self.total


# --------------------------------------------------------------------------
# pointwise densities


def _circle_theta(theta: float) -> None:
    if abs(theta) >= HALF_PI:
        raise SingularityError("boundary densities are singular at the cusp (theta = +-pi/2)")


def traction(c: float, theta: float, k: float) -> TractionSample:
    """Traction across circle ``c`` for the normal ``(cos 2θ, sin 2θ)``.

    That normal points away from the circle's centre; it is the outward
    normal of the lens on the outer circle and the inward one on the inner
    circle.
    """
    _circle_theta(theta)
    r = 2.0 * c * math.cos(theta)
    return TractionSample(
        -4.0 * theta * math.cos(2.0 * theta),
        -4.0 * theta * math.sin(2.0 * theta) + 2.0 * (1.0 + k / (r * r)),
    )


def traction_from_stress(c: float, theta: float, k: float) -> TractionSample:
    """Same traction, assembled as ``σ·n`` from the stress field."""
    _circle_theta(theta)
    s = stress(MaterialPoint(circle_point(c, theta), k))
    return TractionSample(*s.dot((math.cos(2.0 * theta), math.sin(2.0 * theta))))


def moment_density(c: float, theta: float, k: float) -> float:
    """Anti-clockwise moment ``x1 F2 - x2 F1`` of :func:`traction` about the origin."""
    _circle_theta(theta)
    return (
        -4.0 * c * theta * math.sin(2.0 * theta)
        + 2.0 * c * (1.0 + math.cos(2.0 * theta))
        + k / c
    )


def moment_from_traction(c: float, theta: float, k: float) -> float:
    x1, x2 = circle_point(c, theta)
    f = traction_from_stress(c, theta, k)
    return x1 * f.F2 - x2 * f.F1


def ball_energy_density(a: float, theta: float, k: float) -> float:
    """``u·σ·n`` on ``|x| = a`` with the normal pointing to the origin."""
    return 2.0 * a * theta * math.tan(theta) + a * (1.0 + k / (a * a))


# --------------------------------------------------------------------------
# closed forms (reference orientation)


def outer_force_closed_form(c1: float, theta_a: float, k: float) -> float:
    return (
        -8.0 * c1 * theta_a * math.cos(2.0 * theta_a)
        + 4.0 * c1 * math.sin(2.0 * theta_a)
        - 8.0 * c1 * theta_a
        - 2.0 * k / c1 * math.tan(theta_a)
    )


def inner_force_closed_form(c2: float, theta_d: float, k: float) -> float:
    return (
        8.0 * c2 * theta_d * math.cos(2.0 * theta_d)
        - 4.0 * c2 * math.sin(2.0 * theta_d)
        + 8.0 * c2 * theta_d
        + 2.0 * k / c2 * math.tan(theta_d)
    )


def force_resultant_closed_form(c2: float, c1: float, a: float, k: float) -> float:
    """``T2a`` written out in full."""
    th_a = math.acos(a / (2.0 * c1))
    th_d = math.acos(a / (2.0 * c2))
    return (
        -8.0 * (c2 * th_d * math.cos(2.0 * th_d) - c1 * th_a * math.cos(2.0 * th_a))
        - 4.0 * (c1 * math.sin(2.0 * th_a) - c2 * math.sin(2.0 * th_d))
        - 8.0 * (c2 * th_d - c1 * th_a)
        - 2.0 * k * (math.tan(th_d) / c2 - math.tan(th_a) / c1)
    )


def outer_moment_closed_form(c1: float, theta_a: float, k: float) -> float:
    return -8.0 * c1**2 * theta_a * math.cos(2.0 * theta_a) - 4.0 * (k + 2.0 * c1**2) * theta_a


def inner_moment_closed_form(c2: float, theta_d: float, k: float) -> float:
    return 8.0 * c2**2 * theta_d * math.cos(2.0 * theta_d) + 4.0 * (k + 2.0 * c2**2) * theta_d


def moment_resultant_closed_form(c2: float, c1: float, a: float, k: float) -> float:
    th_a = math.acos(a / (2.0 * c1))
    th_d = math.acos(a / (2.0 * c2))
    return (
        8.0 * (c1**2 * th_a * math.cos(2.0 * th_a) - c2**2 * th_d * math.cos(2.0 * th_d))
        + 4.0 * (k + 2.0 * c1**2) * th_a
        - 4.0 * (k + 2.0 * c2**2) * th_d
    )


def claimed_couple_limit(R: float) -> float:
    """The published value ``4(R² - 1)π`` for the limiting couple."""
    return 4.0 * (R * R - 1.0) * math.pi


def energy_closed_forms(c2: float, c1: float, a: float, k: float) -> tuple[float, float]:
    """Physical ``(V1, V2)`` from the exact antiderivative.

    With ``G(c, θ) = -2c² sin 2θ - 2kθ + k tan θ``, ``V1 = 2G(c1, θ_A)`` and
    ``V2 = -2G(c2, θ_D)``.
    """
    th_a = math.acos(a / (2.0 * c1))
    th_d = math.acos(a / (2.0 * c2))

    def G(c: float, t: float) -> float:
        return -2.0 * c * c * math.sin(2.0 * t) - 2.0 * k * t + k * math.tan(t)

    return 2.0 * G(c1, th_a), -2.0 * G(c2, th_d)


def energy_closed_forms_reference(c2: float, c1: float, a: float, k: float) -> tuple[float, float]:
    """``(V1, V2)`` exactly as published, in the reference orientation.

    These differ from ``-energy_closed_forms`` by ``±(8kθ - 4k tan θ)``:
    the signs of the k-dependent terms are reversed.  With ``k = 0`` the two
    agree.
    """
    th_a = math.acos(a / (2.0 * c1))
    th_d = math.acos(a / (2.0 * c2))
    v1 = 4.0 * c1**2 * math.sin(2.0 * th_a) - 4.0 * k * th_a + 2.0 * k * math.tan(th_a)
    v2 = -4.0 * c2**2 * math.sin(2.0 * th_d) + 4.0 * k * th_d - 2.0 * k * math.tan(th_d)
    return v1, v2


# --------------------------------------------------------------------------
# quadrature over arcs


def _arc_physical(
    arc: BoundaryArc, density: Callable[[float], float], cfg: numerics.QuadConfig
) -> float:
    speed = arc.speed()
    return numerics.integrate_1d(lambda t: density(t) * speed, arc.theta_lo, arc.theta_hi, cfg)


def _sigma_n(arc: BoundaryArc, theta: float, k: float) -> tuple[tuple[float, float], Point2]:
    p = arc.point(theta)
    s = stress(MaterialPoint(p, k))
    return s.dot(outward_normal(arc, theta)), p


def _arcs(domain: LensDomain, a: float) -> list[BoundaryArc]:
    if not (0.0 < a < 2.0):
        raise GeometryError(f"ball radius must satisfy 0 < a < 2, got {a}")
    return punctured_arcs(1.0, domain.R, a)


def _orientation(arc: BoundaryArc) -> str:
    return arc.describe()


@dataclass(frozen=True)
class ForceReport:
    """Resultant forces on the punctured lens at one ball radius.

    ``T1`` and ``T2`` are the x1 and x2 forces carried by the ball arcs in
    the reference orientation; ``arcs`` holds the circle-arc integrals of
    ``F2`` against their closed forms.  ``ball_direct`` is the physical x2
    force integrated directly on the ball arcs and ``equilibrium_gap`` the
    physical sum over all four arcs, which must vanish.
    """

    a: float
    T1: IntegralReport
    T2: IntegralReport
    arcs: tuple[IntegralReport, ...]
    ball_direct: float
    equilibrium_gap: tuple[float, float]


def total_force(
    domain: LensDomain, a: float, cfg: numerics.QuadConfig | None = None
) -> ForceReport:
    cfg = cfg or DEFAULT_QUAD
    k = domain.k
    outer, inner, up, low = _arcs(domain, a)
    phys = {}
    for arc in (outer, inner, up, low):
        phys[arc.kind] = tuple(
            _arc_physical(arc, lambda t, i=i: _sigma_n(arc, t, k)[0][i], cfg) for i in (0, 1)
        )
    ref_outer = [outer.reference_sign * v for v in phys[outer.kind]]
    ref_inner = [inner.reference_sign * v for v in phys[inner.kind]]
    th_a, th_d = outer.theta_start, inner.theta_end
    arcs = (
        IntegralReport("F2 over outer arc", ref_outer[1], outer_force_closed_form(domain.R, th_a, k),
                       _orientation(outer)),
        IntegralReport("F2 over inner arc", ref_inner[1], inner_force_closed_form(1.0, th_d, k),
                       _orientation(inner)),
    )
    T1 = IntegralReport("T1a", -(ref_outer[0] + ref_inner[0]), 0.0, "x1 force, reference orientation")
    T2 = IntegralReport(
        "T2a",
        -(ref_outer[1] + ref_inner[1]),
        force_resultant_closed_form(1.0, domain.R, a, k),
        "x2 force, reference orientation: T2a = -(outer + inner)",
    )
    ball = phys[up.kind][1] + phys[low.kind][1]
    gap = tuple(math.fsum(phys[kd][i] for kd in phys) for i in (0, 1))
    return ForceReport(a, T1, T2, arcs, ball, gap)


@dataclass(frozen=True)
class MomentReport:
    """Couples about the origin on the punctured lens at one ball radius."""

    a: float
    arcs: tuple[IntegralReport, ...]
    gamma: IntegralReport
    ball_direct: float
    equilibrium_gap: float
    claimed_limit: float


def total_moment(
    domain: LensDomain, a: float, cfg: numerics.QuadConfig | None = None
) -> MomentReport:
    """Couple integrals; ``gamma`` is ``Γa = -(Γ^{c1} + Γ^{c2})``.

    ``claimed_limit`` is the published ``a -> 0`` value, carried along for
    comparison only; :func:`limit_report` extrapolates the actual limit.
    """
    cfg = cfg or DEFAULT_QUAD
    k = domain.k
    outer, inner, up, low = _arcs(domain, a)

    def mom(arc: BoundaryArc, t: float) -> float:
        (f1, f2), (x1, x2) = _sigma_n(arc, t, k)
        return x1 * f2 - x2 * f1

    phys = {arc.kind: _arc_physical(arc, lambda t, arc=arc: mom(arc, t), cfg) for arc in (outer, inner, up, low)}
    g1 = outer.reference_sign * phys[outer.kind]
    g2 = inner.reference_sign * phys[inner.kind]
    th_a, th_d = outer.theta_start, inner.theta_end
    arcs = (
        IntegralReport("couple over outer arc", g1, outer_moment_closed_form(domain.R, th_a, k), _orientation(outer)),
        IntegralReport("couple over inner arc", g2, inner_moment_closed_form(1.0, th_d, k), _orientation(inner)),
    )
    gamma = IntegralReport(
        "Gamma_a",
        -(g1 + g2),
        moment_resultant_closed_form(1.0, domain.R, a, k),
        "reference orientation: Gamma_a = -(outer + inner)",
    )
    ball = phys[up.kind] + phys[low.kind]
    gap = math.fsum(phys.values())
    return MomentReport(a, arcs, gamma, ball, gap, claimed_couple_limit(domain.R))


def _energy_pieces(c2: float, c1: float, a: float, k: float, cfg: numerics.QuadConfig):
    outer, inner, up, low = punctured_arcs(c2, c1, a)

    def circle_density(arc: BoundaryArc, t: float) -> float:
        (f1, f2), _ = _sigma_n(arc, t, k)
        u1, u2 = displacement_on_circle(arc.radius, t)
        return u1 * f1 + u2 * f2

    v1 = _arc_physical(outer, lambda t: circle_density(outer, t), cfg)
    v2 = _arc_physical(inner, lambda t: circle_density(inner, t), cfg)
    w1 = _arc_physical(up, lambda t: ball_energy_density(a, t, k), cfg)
    w2 = _arc_physical(low, lambda t: ball_energy_density(a, t, k), cfg)
    return (outer, inner, up, low), EnergyDecomposition(v1, v2, w1, w2)


def boundary_energy(
    domain: LensDomain, a: float, cfg: numerics.QuadConfig | None = None
) -> EnergyDecomposition:
    """Physical boundary decomposition of ``2 E_a``.

    ``V1``, ``V2`` integrate ``u·σ·n`` over the outer and inner circle arcs
    with the on-circle displacement; ``W1``, ``W2`` integrate the ball
    density :func:`ball_energy_density` over the upper and lower ball arcs.
    """
    _arcs(domain, a)
    return _energy_pieces(1.0, domain.R, a, domain.k, cfg or DEFAULT_QUAD)[1]


@dataclass(frozen=True)
class EnergyReport:
    """Energy pieces next to their closed forms.

    ``V1``/``V2`` compare the physical quadrature with the exact
    antiderivative.  ``V1_reference``/``V2_reference``/``V_sum_reference``
    compare the reference-oriented quadrature (``-physical``) with the
    published expressions.  ``W_check`` compares the ball density against
    ``u·σ·n`` assembled from the fields.
    """

    a: float
    decomposition: EnergyDecomposition
    V1: IntegralReport
    V2: IntegralReport
    V1_reference: IntegralReport
    V2_reference: IntegralReport
    V_sum_reference: IntegralReport
    W_check: IntegralReport


def energy_report(
    domain: LensDomain, a: float, cfg: numerics.QuadConfig | None = None
) -> EnergyReport:
    cfg = cfg or DEFAULT_QUAD
    _arcs(domain, a)
    k = domain.k
    (outer, inner, up, low), dec = _energy_pieces(1.0, domain.R, a, k, cfg)
    cf1, cf2 = energy_closed_forms(1.0, domain.R, a, k)
    rf1, rf2 = energy_closed_forms_reference(1.0, domain.R, a, k)
    q1 = outer.reference_sign * dec.V1
    q2 = inner.reference_sign * dec.V2

    def assembled(arc: BoundaryArc, t: float) -> float:
        (f1, f2), p = _sigma_n(arc, t, k)
        u1, u2 = displacement(p)
        return u1 * f1 + u2 * f2

    w_direct = _arc_physical(up, lambda t: assembled(up, t), cfg) + _arc_physical(
        low, lambda t: assembled(low, t), cfg
    )
    return EnergyReport(
        a=a,
        decomposition=dec,
        V1=IntegralReport("V1", dec.V1, cf1, "physical"),
        V2=IntegralReport("V2", dec.V2, cf2, "physical"),
        V1_reference=IntegralReport("V1 (published form)", q1, rf1, _orientation(outer)),
        V2_reference=IntegralReport("V2 (published form)", q2, rf2, _orientation(inner)),
        V_sum_reference=IntegralReport("V1+V2 (published form)", q1 + q2, rf1 + rf2, "reference orientation"),
        W_check=IntegralReport("W1+W2 vs assembled u.sigma.n", dec.W1 + dec.W2, w_direct, "physical"),
    )


def area_energy(
    domain: LensDomain,
    a: float,
    cfg: numerics.QuadConfig | None = None,
    method: str = "kernel",
    probes: int = 2049,
) -> float:
    """Strain energy ``E_a = ½ ∫ σ:e dA`` by direct area quadrature.

    ``method="kernel"`` integrates in polar coordinates with the compiled
    (or fallback) nested Gauss-Kronrod kernel; ``method="predicate"`` uses
    :func:`cuspelastic.numerics.integrate_2d` on a membership predicate in
    Cartesian coordinates with ``probes`` samples per vertical line, which
    is much slower.  Membership is tested as ``r² > 2 x1`` (outside the
    inner circle) and ``r² < 2R x1`` (inside the outer one).

    Raises:
        ConvergenceError: the quadrature did not reach the tolerance.
    """
    _arcs(domain, a)
    k = domain.k
    R = domain.R
    if method == "kernel":
        cfg = cfg or numerics.QuadConfig(abs_tol=1e-10, rel_tol=1e-11, max_subdivisions=2000)
        val, err, ok = lens_energy_integral(1.0, R, a, k, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions)
        if not ok:
            raise ConvergenceError("area energy integral did not converge", estimate=0.5 * val, error=0.5 * err)
        return 0.5 * val
    if method == "predicate":
        cfg = cfg or numerics.QuadConfig(abs_tol=1e-7, rel_tol=1e-8, max_subdivisions=500)

        def inside(x1: float, x2):
            r2 = x1 * x1 + np.asarray(x2) ** 2
            return (r2 >= a * a) & (r2 > 2.0 * x1) & (r2 < 2.0 * R * x1)

        def density(x1: float, x2: float) -> float:
            mp = MaterialPoint(Point2(x1, x2), k)
            s: SymTensor2 = stress(mp)
            e22 = x2 / x1
            e12 = (x1 * x1 - x2 * x2) / (4.0 * x1 * x1)
            return s.t22 * e22 + 2.0 * s.t12 * e12

        region = numerics.Region(inside, (a * a / (2.0 * R), 2.0 * R, -R, R), vectorized=True)
        return 0.5 * numerics.integrate_2d(density, region, cfg, probes=probes)
    raise InputError(f"unknown method {method!r}")


# --------------------------------------------------------------------------
# a -> 0 limits


def default_a_sequence() -> list[float]:
    return [0.4 * 0.5**n for n in range(7)]


class LimitRow(NamedTuple):
    a: float
    tan_theta_A: float
    tan_theta_A_gap: float
    T1: float
    T2: float
    gamma: float
    energy: float
    a_energy: float


@dataclass(frozen=True)
class LimitReport:
    """Integrals tabulated against ``a`` with their extrapolated limits.

    ``energy_fit`` fits ``E_a`` by ``A/a + B + c1 a + c2 a² + c3 a³``; its
    ``singular_coeff`` is the ``1/a`` coefficient, expected to be
    ``2k(c1 - c2)``.  ``energy_fit_plain`` is the bare ``A/a + B`` model for
    comparison.  ``T1_fit``, ``T2_fit`` and ``gamma_fit`` are polynomial fits
    in ``a`` (degree 4); their ``constant_term`` is the limit.
    """

    R: float
    k: float
    rows: tuple[LimitRow, ...]
    energy_fit: numerics.LimitEstimate
    energy_fit_plain: numerics.LimitEstimate
    T1_fit: numerics.LimitEstimate
    T2_fit: numerics.LimitEstimate
    gamma_fit: numerics.LimitEstimate
    gamma_claim: float
    gamma_difference: float
    orientation: tuple[str, ...]
    disclosure: str = GAMMA_DISCLOSURE


def limit_report(
    domain: LensDomain,
    a_sequence: Sequence[float] | None = None,
    cfg: numerics.QuadConfig | None = None,
) -> LimitReport:
    """Tabulate ``T1``, ``T2a``, ``Γa``, ``E_a`` against ``a`` and extrapolate.

    The default sequence is ``0.4 * 2**-n`` for ``n = 0..6``.
    """
    seq = list(default_a_sequence() if a_sequence is None else a_sequence)
    if len(seq) < 3:
        raise InputError("need at least 3 values of a")
    if any(b >= a for a, b in zip(seq, seq[1:])):
        raise InputError("a_sequence must be strictly decreasing")
    if min(seq) <= 1e-6:
        raise InputError("smallest a must exceed 1e-6")
    if max(seq) >= 2.0:
        raise GeometryError("a must be below 2")
    cfg = cfg or DEFAULT_QUAD
    rows = []
    for a in seq:
        f = total_force(domain, a, cfg)
        m = total_moment(domain, a, cfg)
        e = boundary_energy(domain, a, cfg).energy
        tan_a = math.tan(math.acos(a / (2.0 * domain.R)))
        rows.append(LimitRow(a, tan_a, tan_a - 2.0 * domain.R / a, f.T1.quadrature_value,
                             f.T2.quadrature_value, m.gamma.quadrature_value, e, a * e))

    def pts(attr: str):
        return [(r.a, getattr(r, attr)) for r in rows]

    n_poly = min(4, len(rows) - 2)
    n_corr = min(3, len(rows) - 3)
    gamma_fit = numerics.fit_singular_limit(pts("gamma"), corrections=n_poly, singular=False)
    claim = claimed_couple_limit(domain.R)
    arcs = _arc_notes(domain, seq[0])
    return LimitReport(
        R=domain.R,
        k=domain.k,
        rows=tuple(rows),
        energy_fit=numerics.fit_singular_limit(pts("energy"), corrections=n_corr),
        energy_fit_plain=numerics.fit_singular_limit(pts("energy")),
        T1_fit=numerics.fit_singular_limit(pts("T1"), corrections=n_poly, singular=False),
        T2_fit=numerics.fit_singular_limit(pts("T2"), corrections=n_poly, singular=False),
        gamma_fit=gamma_fit,
        gamma_claim=claim,
        gamma_difference=gamma_fit.constant_term - claim,
        orientation=arcs,
    )


def _arc_notes(domain: LensDomain, a: float) -> tuple[str, ...]:
    """One line per arc describing traversal and sign relative to physical."""
    return tuple(arc.describe() for arc in _arcs(domain, a))
