"""Stress, Lamé fields and residual checks for the semi-inverse solution.

The stress derives from the real potential ``Φ = 2θ(r² - k)`` through

    σ11 = -Φ,22    σ12 = +Φ,12    σ22 = -Φ,11

which gives, with ``K = 1 + k/r²``::

    σ11 = -2(2θ + K sin 2θ)
    σ22 =  2(-2θ + K sin 2θ)
    σ12 =  2K cos 2θ

Pairing this stress with the strain of :mod:`cuspelastic.fields` fixes the
nonhomogeneous Lamé parameters ``μ = 4K cos²θ`` and
``λ = -4θ cot θ - 4K cos²θ``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import numerics
from ._kernels import ellipticity_margin_min
from .errors import DomainError, EvaluationError, InputError, SingularityError
from .fields import SymTensor2, gradient, strain
from .geometry import HALF_PI, LensDomain, Point2

__all__ = [
    "MaterialPoint",
    "LameSample",
    "LameRatios",
    "AirySample",
    "EllipticityScan",
    "theta_cot_theta",
    "airy",
    "airy_hessian_fd",
    "stress",
    "lame",
    "lambda_coefficient",
    "constitutive_residual",
    "lame_from_ratios",
    "equilibrium_residual",
    "airy_pde_residual",
    "navier_residual",
    "ellipticity_margin",
    "ellipticity_scan",
    "general_J",
    "general_J_derivative_check",
]

# Below this |θ| the series 1 - θ²/3 replaces θ cot θ.
_THETA_SERIES = 1e-4
# A ratio identity is applied only if its denominator exceeds this.
RATIO_DENOM_MIN = 1e-8


@dataclass(frozen=True)
class MaterialPoint:
    point: Point2
    k: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.k) and self.k >= 0):
            raise InputError(f"k must be nonnegative, got {self.k}")
        object.__setattr__(self, "point", Point2(float(self.point[0]), float(self.point[1])))


class LameSample(NamedTuple):
    mu: float
    lam: float
    lambda_plus_2mu: float
    poisson: Optional[float]


class LameRatios(NamedTuple):
    """Lamé quantities recovered from stress/strain ratios.

    Each entry is ``None`` where its denominator is too small to use.
    ``mu_diag`` is the second expression for μ, built from the diagonal
    differences ``(σ11 - σ22)/(e11 - e22)``.
    """

    mu: Optional[float]
    mu_diag: Optional[float]
    lambda_plus_mu: Optional[float]
    lambda_plus_2mu: Optional[float]
    lam: Optional[float]


class AirySample(NamedTuple):
    value: float
    hessian: SymTensor2


class EllipticityScan(NamedTuple):
    min_margin: float
    argmin: Point2
    argmin_c: float
    argmin_theta: float
    k_threshold: float
    grid: tuple[int, int]


def _polar(mp: MaterialPoint) -> tuple[float, float, float, float]:
    x1, x2 = mp.point
    r2 = x1 * x1 + x2 * x2
    if r2 == 0.0:
        raise SingularityError("fields are singular at r = 0")
    if x1 < 0.0:
        raise DomainError(f"point must lie in the right half-plane, got x1={x1}")
    return x1, x2, r2, math.atan2(x2, x1)


def theta_cot_theta(theta: float) -> float:
    """``θ cot θ`` continued through its removable singularity at 0."""
    if abs(theta) < _THETA_SERIES:
        return 1.0 - theta * theta / 3.0
    return theta / math.tan(theta)


def stress(mp: MaterialPoint) -> SymTensor2:
    _, _, r2, th = _polar(mp)
    big_k = 1.0 + mp.k / r2
    s2 = math.sin(2.0 * th)
    return SymTensor2(
        -2.0 * (2.0 * th + big_k * s2),
        2.0 * big_k * math.cos(2.0 * th),
        2.0 * (-2.0 * th + big_k * s2),
    )


def airy(mp: MaterialPoint) -> AirySample:
    """Real potential ``2θ(r² - k)`` with its analytic Cartesian Hessian."""
    x1, x2, r2, th = _polar(mp)
    k = mp.k
    r4 = r2 * r2
    th_1, th_2 = -x2 / r2, x1 / r2
    th_11 = 2.0 * x1 * x2 / r4
    th_22 = -th_11
    th_12 = (x2 * x2 - x1 * x1) / r4
    w = r2 - k
    h11 = 2.0 * th_11 * w + 8.0 * x1 * th_1 + 4.0 * th
    h22 = 2.0 * th_22 * w + 8.0 * x2 * th_2 + 4.0 * th
    h12 = 2.0 * th_12 * w + 4.0 * x2 * th_1 + 4.0 * x1 * th_2
    return AirySample(2.0 * th * w, SymTensor2(h11, h12, h22))


def _fd_step(x1: float, x2: float, cfg: numerics.DiffConfig | None) -> numerics.DiffConfig:
    if cfg is not None:
        return cfg
    r = math.hypot(x1, x2)
    return numerics.DiffConfig(base_step=min(1e-3, 0.1 * x1, 0.05 * r), richardson_levels=2)


def airy_hessian_fd(mp: MaterialPoint, cfg: numerics.DiffConfig | None = None) -> SymTensor2:
    """Hessian of the potential by second differences.

    The mixed partial uses the polarization identity on the directional
    second derivatives along ``(1, 1)`` and ``(1, -1)``.  Without ``cfg`` the
    step is tied to the distance from the axis and the origin.
    """
    x1, x2, _, _ = _polar(mp)
    cfg = _fd_step(x1, x2, cfg)
    k = mp.k

    def phi(y1: float, y2: float) -> float:
        if y1 <= 0.0:
            raise EvaluationError("stencil left the right half-plane", abscissa=(y1, y2))
        return 2.0 * math.atan2(y2, y1) * (y1 * y1 + y2 * y2 - k)

    def d2(v1: float, v2: float) -> float:
        return numerics.derivative(lambda t: phi(x1 + t * v1, x2 + t * v2), 0.0, 2, cfg)

    h11 = d2(1.0, 0.0)
    h22 = d2(0.0, 1.0)
    h12 = 0.25 * (d2(1.0, 1.0) - d2(1.0, -1.0))
    return SymTensor2(h11, h12, h22)


def lame(mp: MaterialPoint) -> LameSample:
    _, _, r2, th = _polar(mp)
    if abs(th) >= HALF_PI:
        raise SingularityError("Lamé fields are singular at theta = +-pi/2")
    big_k = 1.0 + mp.k / r2
    cos2 = math.cos(th) ** 2
    tct = theta_cot_theta(th)
    mu = 4.0 * big_k * cos2
    lam = -4.0 * tct - 4.0 * big_k * cos2
    lp2m = -4.0 * tct + 4.0 * big_k * cos2
    lpm = lam + mu
    poisson = lam / (2.0 * lpm) if abs(lpm) > 1e-12 * max(abs(lam), abs(mu)) else None
    return LameSample(mu, lam, lp2m, poisson)


def lambda_coefficient(p: Point2, form: str = "strain") -> float:
    """The strain ratio ``Λ = (e11 - e22)/e12``.

    ``form="strain"`` evaluates the ratio from :func:`cuspelastic.fields.strain`;
    ``form="complex"`` evaluates ``2i(z² - z̄²)/(z² + z̄²)`` in complex
    arithmetic.  Both reduce to ``-4 x1 x2 / (x1² - x2²)``.

    Raises:
        EvaluationError: on the diagonals ``|x1| = |x2|`` where ``e12 = 0``.
    """
    x1, x2 = float(p[0]), float(p[1])
    if abs(x1 * x1 - x2 * x2) <= 1e-14 * (x1 * x1 + x2 * x2):
        raise EvaluationError(f"Λ is undefined where |x1| = |x2| (point {x1}, {x2})", abscissa=(x1, x2))
    if form == "strain":
        e = strain(Point2(x1, x2))
        return (e.t11 - e.t22) / e.t12
    if form == "complex":
        z = complex(x1, x2)
        zb = z.conjugate()
        val = 2j * (z * z - zb * zb) / (z * z + zb * zb)
        return val.real
    raise InputError(f"unknown form {form!r}")


def constitutive_residual(mp: MaterialPoint) -> SymTensor2:
    """``σ - (λ tr(e) I + 2μ e)`` at ``mp``."""
    s = stress(mp)
    e = strain(mp.point)
    lm = lame(mp)
    tr = e.trace
    return SymTensor2(
        s.t11 - (lm.lam * tr + 2.0 * lm.mu * e.t11),
        s.t12 - 2.0 * lm.mu * e.t12,
        s.t22 - (lm.lam * tr + 2.0 * lm.mu * e.t22),
    )


def lame_from_ratios(stress_: SymTensor2, strain_: SymTensor2) -> LameRatios:
    """Recover μ, λ+μ, λ+2μ and λ from an isotropic stress/strain pair.

    Identities used where their denominators are not tiny::

        2μ      = σ12 / e12 = (σ11 - σ22)/(e11 - e22)
        2(λ+μ)  = (σ11 + σ22)/(e11 + e22)
        λ + 2μ  = (σ11 e11 - σ22 e22)/(e11² - e22²)
        λ       = (σ22 e11 - σ11 e22)/(e11² - e22²)
    """
    s11, s12, s22 = stress_
    e11, e12, e22 = strain_

    def ratio(num: float, den: float, factor: float = 1.0) -> Optional[float]:
        return num / den / factor if abs(den) > RATIO_DENOM_MIN else None

    dsq = e11 * e11 - e22 * e22
    return LameRatios(
        mu=ratio(s12, e12, 2.0),
        mu_diag=ratio(s11 - s22, e11 - e22, 2.0),
        lambda_plus_mu=ratio(s11 + s22, e11 + e22, 2.0),
        lambda_plus_2mu=ratio(s11 * e11 - s22 * e22, dsq),
        lam=ratio(s22 * e11 - s11 * e22, dsq),
    )


def _check_clearance(x1: float, x2: float, reach: float) -> None:
    if x1 - reach <= 0.0:
        raise EvaluationError(
            f"difference stencil of reach {reach:.3g} leaves the half-plane at x1={x1}",
            abscissa=(x1 - reach, x2),
        )
    if math.hypot(x1, x2) <= reach:
        raise EvaluationError("difference stencil touches r = 0", abscissa=(x1, x2))


def equilibrium_residual(
    mp: MaterialPoint, cfg: numerics.DiffConfig | None = None
) -> tuple[float, float]:
    """Finite-difference divergence of the stress, relative to ``|σ|``.

    Returns ``(σ1β,β, σ2β,β) / |σ|_F`` with the Frobenius norm of the stress
    at ``mp``.
    """
    x1, x2, _, _ = _polar(mp)
    cfg = cfg or numerics.DiffConfig()
    _check_clearance(x1, x2, 2.0 * max(cfg.step(x1), cfg.step(x2)))
    k = mp.k

    def comp(y1: float, y2: float, idx: int) -> float:
        return stress(MaterialPoint(Point2(y1, y2), k))[idx]

    d11_1 = numerics.derivative(lambda t: comp(t, x2, 0), x1, 1, cfg)
    d12_2 = numerics.derivative(lambda t: comp(x1, t, 1), x2, 1, cfg)
    d12_1 = numerics.derivative(lambda t: comp(t, x2, 1), x1, 1, cfg)
    d22_2 = numerics.derivative(lambda t: comp(x1, t, 2), x2, 1, cfg)
    s = stress(mp)
    scale = math.sqrt(s.t11**2 + 2.0 * s.t12**2 + s.t22**2) or 1.0
    return (d11_1 + d12_2) / scale, (d12_1 + d22_2) / scale


def airy_pde_residual(mp: MaterialPoint, cfg: numerics.DiffConfig | None = None) -> float:
    """Relative residual of ``Φ,11 - Φ,22 - Λ Φ,12``.

    The analytic Hessian is used unless ``cfg`` is given, in which case the
    Hessian comes from :func:`airy_hessian_fd` with that step control.
    """
    lam_c = lambda_coefficient(mp.point)
    h = airy(mp).hessian if cfg is None else airy_hessian_fd(mp, cfg)
    terms = (h.t11, -h.t22, -lam_c * h.t12)
    scale = max(abs(t) for t in terms) or 1.0
    return math.fsum(terms) / scale


def navier_residual(
    mp: MaterialPoint, cfg: numerics.DiffConfig | None = None
) -> tuple[float, float]:
    """Residual of the nonhomogeneous Navier equations, relative to term size.

    ``μ u_α,ββ + (λ+μ) u_β,βα + λ,α u_β,β + μ,β (u_α,β + u_β,α)``; the
    displacement derivatives are analytic, the gradients of λ and μ come
    from finite differences.  Each component is divided by the sum of the
    absolute values of its terms.
    """
    x1, x2, _, _ = _polar(mp)
    cfg = cfg or numerics.DiffConfig()
    _check_clearance(x1, x2, 2.0 * max(cfg.step(x1), cfg.step(x2)))
    k = mp.k
    lm = lame(mp)
    g = gradient(mp.point)
    grad_u = ((g.du1_dx1, g.du1_dx2), (g.du2_dx1, g.du2_dx2))
    div_u = g.du1_dx1 + g.du2_dx2
    lap_u = (0.0, x2 * x2 / x1**3 + 1.0 / x1)
    grad_div = (-x2 / (x1 * x1), 1.0 / x1)

    def field(y1: float, y2: float, which: str) -> float:
        s = lame(MaterialPoint(Point2(y1, y2), k))
        return s.mu if which == "mu" else s.lam

    dmu = (
        numerics.derivative(lambda t: field(t, x2, "mu"), x1, 1, cfg),
        numerics.derivative(lambda t: field(x1, t, "mu"), x2, 1, cfg),
    )
    dlam = (
        numerics.derivative(lambda t: field(t, x2, "lam"), x1, 1, cfg),
        numerics.derivative(lambda t: field(x1, t, "lam"), x2, 1, cfg),
    )
    out = []
    for a in range(2):
        terms = [
            lm.mu * lap_u[a],
            (lm.lam + lm.mu) * grad_div[a],
            dlam[a] * div_u,
        ]
        terms += [dmu[b] * (grad_u[a][b] + grad_u[b][a]) for b in range(2)]
        scale = sum(abs(t) for t in terms) or 1.0
        out.append(math.fsum(terms) / scale)
    return out[0], out[1]


def ellipticity_margin(c: float, theta: float, k: float) -> float:
    """``λ + 2μ`` on circle ``c`` written as ``4θ cot θ (sin 2θ/(2θ) - 1) + k/c²``."""
    if abs(theta) >= HALF_PI:
        raise SingularityError("margin is singular at theta = +-pi/2")
    if abs(theta) < _THETA_SERIES:
        bracket = -2.0 * theta * theta / 3.0
    else:
        bracket = math.sin(2.0 * theta) / (2.0 * theta) - 1.0
    return 4.0 * theta_cot_theta(theta) * bracket + k / (c * c)


def _grid_shape(grid: int | tuple[int, int]) -> tuple[int, int]:
    nc, nt = (grid, grid) if isinstance(grid, (int, np.integer)) else grid
    if nc < 32 or nt < 32:
        raise InputError(f"ellipticity grid must be at least 32x32, got {nc}x{nt}")
    return int(nc), int(nt)


def ellipticity_scan(
    domain: LensDomain, grid: int | tuple[int, int] = 64, k_tol: float = 1e-6
) -> EllipticityScan:
    """Grid minimum of ``λ + 2μ`` over ``(c, θ) ∈ [1, R] × (-π/2, π/2)``.

    ``c`` takes ``nc`` equally spaced values including both ends; ``θ`` takes
    the ``nθ`` interior points of an equal division of the open interval.
    Ties resolve to the smallest ``c``, then the smallest ``θ``.
    ``k_threshold`` is the smallest ``k`` (to ``k_tol``) for which the grid
    minimum is positive, found by bisection; it is relative to this grid.
    """
    nc, nt = _grid_shape(grid)
    R = domain.R
    val, i, j = ellipticity_margin_min(R, domain.k, nc, nt)
    c = 1.0 + (R - 1.0) * i / (nc - 1)
    th = -HALF_PI + math.pi * (j + 1) / (nt + 1)
    cos_t = math.cos(th)
    arg = Point2(2.0 * c * cos_t * cos_t, c * math.sin(2.0 * th))

    lo, hi = 0.0, 1.0
    if ellipticity_margin_min(R, lo, nc, nt)[0] > 0:
        hi = 0.0
    else:
        while ellipticity_margin_min(R, hi, nc, nt)[0] <= 0:
            lo, hi = hi, 2.0 * hi
        while hi - lo > k_tol:
            mid = 0.5 * (lo + hi)
            if ellipticity_margin_min(R, mid, nc, nt)[0] > 0:
                hi = mid
            else:
                lo = mid
    return EllipticityScan(val, arg, c, th, hi, (nc, nt))


def general_J(p: Point2, m: int, k: float) -> float:
    """``Σ_{j=1..m} (r²)^j / j! + k``."""
    if int(m) != m or m < 1:
        raise InputError(f"m must be a positive integer, got {m}")
    r2 = float(p[0]) ** 2 + float(p[1]) ** 2
    return math.fsum(r2**j / math.factorial(j) for j in range(1, m + 1)) + k


def general_J_derivative_check(
    m: int,
    k: float,
    cfg: numerics.DiffConfig | None = None,
    z0: complex = complex(1.0, 0.5),
) -> float:
    """Magnitude of the ``(m+1)``-th derivative of J in ``z`` at fixed ``z̄``.

    J is treated as a function of two independent complex variables
    ``(z, w)`` with ``w = z̄`` frozen; the derivative is the binomial central
    difference of order ``m+1`` with spacing ``cfg.base_step`` (0.1 when no
    config is given).  The same is done in ``w`` at fixed ``z`` and the
    larger magnitude is returned.
    """
    if int(m) != m or m < 1:
        raise InputError(f"m must be a positive integer, got {m}")
    h = 0.1 if cfg is None else cfg.base_step
    n = m + 1
    w0 = z0.conjugate()

    def J(z: complex, w: complex) -> complex:
        return sum((z * w) ** j / math.factorial(j) for j in range(1, m + 1)) + k

    def nth(f) -> complex:
        acc = 0j
        for i in range(n + 1):
            acc += (-1) ** i * math.comb(n, i) * f((0.5 * n - i) * h)
        return acc / h**n

    dz = nth(lambda t: J(z0 + t, w0))
    dw = nth(lambda t: J(z0, w0 + t))
    return max(abs(dz), abs(dw))
