"""The singular displacement field and its kinematics.

The displacement ``u = (x2, (x2**2 - x1**2) / (2 x1))`` is tangent to the
family circle through each point and has constant magnitude ``c`` on the
circle ``c``.  It is smooth for ``x1 > 0`` and has no limit at the cusp:
approaching the origin along circle ``c`` gives ``u2 -> c``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from . import numerics
from .errors import InputError, SingularityError
from .geometry import HALF_PI, Point2, circle_point

__all__ = [
    "DisplacementSample",
    "SymTensor2",
    "GradientSample",
    "PolarComponents",
    "CuspApproach",
    "displacement",
    "displacement_on_circle",
    "gradient",
    "strain",
    "polar_components",
    "rigid_decomposition",
    "cusp_approach",
    "cusp_limit",
    "cusp_jump",
    "circle_dilatation",
]


class DisplacementSample(NamedTuple):
    u1: float
    u2: float


class SymTensor2(NamedTuple):
    """Symmetric 2x2 tensor stored as its three independent components."""

    t11: float
    t12: float
    t22: float

    @property
    def trace(self) -> float:
        return self.t11 + self.t22

    def dot(self, n: tuple[float, float]) -> tuple[float, float]:
        return self.t11 * n[0] + self.t12 * n[1], self.t12 * n[0] + self.t22 * n[1]

    def contract(self, other: "SymTensor2") -> float:
        """Double contraction ``T:S``; the off-diagonal term counts twice."""
        return self.t11 * other.t11 + 2.0 * self.t12 * other.t12 + self.t22 * other.t22


class GradientSample(NamedTuple):
    du1_dx1: float
    du1_dx2: float
    du2_dx1: float
    du2_dx2: float


class PolarComponents(NamedTuple):
    u_rho: float
    u_phi: float
    u_r: float
    u_theta: float


class CuspApproach(NamedTuple):
    """Values of ``u2`` sampled along a circle towards the cusp.

    ``offsets`` are the angular distances ``pi/2 - theta`` and ``errors``
    the distances ``|u2 - c|``; ``rate`` is the observed order in the offset.
    """

    c: float
    offsets: tuple[float, ...]
    values: tuple[float, ...]
    errors: tuple[float, ...]
    rate: float
    limit: float


def _x1_nonzero(p: Point2) -> tuple[float, float]:
    x1, x2 = float(p[0]), float(p[1])
    if x1 == 0.0:
        raise SingularityError(f"displacement is singular on x1 = 0 (point {x1}, {x2})")
    return x1, x2


def displacement(p: Point2) -> DisplacementSample:
    """Free-point displacement; undefined on the axis ``x1 = 0``."""
    x1, x2 = _x1_nonzero(p)
    return DisplacementSample(x2, (x2 * x2 - x1 * x1) / (2.0 * x1))


def displacement_on_circle(c: float, theta: float) -> DisplacementSample:
    """Displacement written on the circle ``c``: ``(c sin 2θ, -c cos 2θ)``.

    Unlike :func:`displacement` this form is total in ``theta``; at
    ``theta = +-pi/2`` it returns the cusp limit ``(0, c)`` of that circle.
    """
    if not c > 0:
        raise InputError(f"c must be positive, got {c}")
    if abs(theta) > HALF_PI:
        raise InputError(f"theta must lie in [-pi/2, pi/2], got {theta}")
    if abs(theta) == HALF_PI:
        return DisplacementSample(0.0, float(c))
    return DisplacementSample(c * math.sin(2.0 * theta), -c * math.cos(2.0 * theta))


def gradient(p: Point2) -> GradientSample:
    x1, x2 = _x1_nonzero(p)
    return GradientSample(0.0, 1.0, -(x1 * x1 + x2 * x2) / (2.0 * x1 * x1), x2 / x1)


def strain(p: Point2) -> SymTensor2:
    """Symmetrized gradient; ``e11`` vanishes identically."""
    g = gradient(p)
    return SymTensor2(g.du1_dx1, 0.5 * (g.du1_dx2 + g.du2_dx1), g.du2_dx2)


def polar_components(c: float, theta: float) -> PolarComponents:
    """Components of the on-circle displacement in two polar frames.

    ``(u_rho, u_phi)`` use the frame centred at ``(c, 0)`` with angle
    ``phi = 2 theta``; ``(u_r, u_theta)`` the frame centred at the origin.
    The displacement is purely tangential: ``u_rho = 0`` and ``u_phi = -c``.
    """
    u1, u2 = displacement_on_circle(c, theta)
    phi = 2.0 * theta
    cp, sp = math.cos(phi), math.sin(phi)
    ct, st = math.cos(theta), math.sin(theta)
    return PolarComponents(
        u_rho=u1 * cp + u2 * sp,
        u_phi=-u1 * sp + u2 * cp,
        u_r=u1 * ct + u2 * st,
        u_theta=-u1 * st + u2 * ct,
    )


def rigid_decomposition(p: Point2) -> tuple[tuple[float, float], tuple[float, float]]:
    """Split ``u(p)`` into a translation ``(0, c)`` and the unit rotation ``(x2, -x1)``."""
    x1, x2 = _x1_nonzero(p)
    c = (x1 * x1 + x2 * x2) / (2.0 * x1)
    return (0.0, c), (x2, -x1)


def cusp_approach(c: float, offsets: tuple[float, ...] | None = None) -> CuspApproach:
    """Walk along circle ``c`` towards the cusp, evaluating the free-point ``u2``.

    The limit is extrapolated from the samples by Richardson elimination in
    powers of the squared offset (``u2 = c - 2c sin^2(offset)`` on the
    circle).  The reported ``rate`` is measured from the last two samples,
    not assumed.
    """
    if not c > 0:
        raise InputError(f"c must be positive, got {c}")
    if offsets is None:
        offsets = tuple(1e-2 * 0.5**j for j in range(6))
    if len(offsets) < 2 or any(b >= a for a, b in zip(offsets, offsets[1:])) or offsets[-1] <= 0:
        raise InputError("offsets must be positive, strictly decreasing, at least two")

    values = tuple(displacement(circle_point(c, HALF_PI - d)).u2 for d in offsets)
    errors = tuple(abs(v - c) for v in values)
    e_prev, e_last = errors[-2], errors[-1]
    if e_prev > 0 and e_last > 0:
        rate = math.log(e_prev / e_last) / math.log(offsets[-2] / offsets[-1])
    else:
        rate = math.inf

    # Neville extrapolation to offset 0 in the variable offset**2
    table = list(values)
    xs = [d * d for d in offsets]
    for j in range(1, len(table)):
        for i in range(len(table) - 1, j - 1, -1):
            table[i] = (xs[i - j] * table[i] - xs[i] * table[i - 1]) / (xs[i - j] - xs[i])
    return CuspApproach(c, tuple(offsets), values, errors, rate, table[-1])


def cusp_limit(c: float) -> float:
    """Limit of ``u2`` at the cusp along circle ``c`` (equals ``c``)."""
    return cusp_approach(c).limit


def cusp_jump(c1: float, c2: float) -> float:
    """Difference between the cusp limits along two circles, ``c1 - c2``."""
    return cusp_limit(c1) - cusp_limit(c2)


def circle_dilatation(
    c: float, theta: float, cfg: numerics.DiffConfig | None = None
) -> float:
    """``e_rr + e_θθ`` of the circle-parametrised polar components.

    The components ``u_r = c sin θ`` and ``u_θ = -r + c cos θ`` are
    differentiated with ``c`` held fixed, then evaluated on the circle
    ``r = 2c cos θ``.  With ``cfg`` the partial derivatives are taken by
    finite differences instead of analytically.
    """
    if not c > 0:
        raise InputError(f"c must be positive, got {c}")
    if abs(theta) >= HALF_PI:
        raise SingularityError("dilatation is undefined at the cusp (r = 0)")
    r = 2.0 * c * math.cos(theta)

    def u_r(rr: float, tt: float) -> float:
        return c * math.sin(tt)

    def u_t(rr: float, tt: float) -> float:
        return -rr + c * math.cos(tt)

    if cfg is None:
        dur_dr = 0.0
        dut_dt = -c * math.sin(theta)
    else:
        dur_dr = numerics.derivative(lambda rr: u_r(rr, theta), r, 1, cfg)
        dut_dt = numerics.derivative(lambda tt: u_t(r, tt), theta, 1, cfg)
    return dur_dr + u_r(r, theta) / r + dut_dt / r
