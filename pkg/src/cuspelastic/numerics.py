"""Numerical kernels shared by the rest of the package.

Central differences with Richardson extrapolation, adaptive Gauss-Kronrod
quadrature in one and two dimensions, and least-squares fitting of the
singular model ``v(a) ~ A/a + B`` used for ``a -> 0`` limits.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, EvaluationError, InputError

__all__ = [
    "DiffConfig",
    "QuadConfig",
    "LimitEstimate",
    "Region",
    "derivative",
    "integrate_1d",
    "integrate_2d",
    "fit_singular_limit",
]

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny


@dataclass(frozen=True)
class DiffConfig:
    """Step control for :func:`derivative`.

    The step actually used at ``x`` is ``base_step * max(1, |x|)``; the
    Richardson table halves it ``richardson_levels`` times starting from
    twice that value.
    """

    base_step: float = 1e-5
    richardson_levels: int = 2

    def __post_init__(self):
        if not self.base_step > 0:
            raise InputError(f"base_step must be positive, got {self.base_step}")
        if int(self.richardson_levels) != self.richardson_levels or self.richardson_levels < 1:
            raise InputError(f"richardson_levels must be an integer >= 1, got {self.richardson_levels}")

    def step(self, x: float) -> float:
        return self.base_step * max(1.0, abs(x))


SECOND_DIFF = DiffConfig(base_step=1e-3)


@dataclass(frozen=True)
class QuadConfig:
    """Tolerances for adaptive quadrature."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise InputError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise InputError("max_subdivisions must be positive")


@dataclass(frozen=True)
class LimitEstimate:
    """Result of :func:`fit_singular_limit`.

    ``singular_coeff`` is A in ``A/a + B`` (zero when the model was fitted
    without the singular column), ``constant_term`` is B, i.e. the regular
    part of the limit.  ``residual`` is the 2-norm of the fit residuals and
    ``error_estimate`` the change in (A, B) when the largest-``a`` sample is
    dropped (NaN when too few samples remain).
    """

    singular_coeff: float
    constant_term: float
    residual: float
    error_estimate: float = math.nan
    corrections: tuple[float, ...] = field(default=())


def derivative(
    f: Callable[[float], float],
    x: float,
    order: int = 1,
    cfg: DiffConfig | None = None,
) -> float:
    """Central-difference derivative of ``f`` at ``x``, Richardson-refined.

    Args:
        f: Scalar function of one real variable.
        x: Abscissa.
        order: 1 or 2.
        cfg: Step control. Defaults to ``DiffConfig()`` for first
            derivatives and to a base step of ``1e-3`` for second ones,
            whose ``1/h**2`` roundoff amplification makes ``1e-5`` too small.

    Returns:
        The extrapolated derivative. Error terms up to ``h**(2*levels)``
        are eliminated, so polynomials of degree ``<= 2*levels`` are
        differentiated exactly up to roundoff.

    Raises:
        EvaluationError: ``f`` returned a non-finite value; the offending
            abscissa is attached.
    """
    if order not in (1, 2):
        raise InputError(f"order must be 1 or 2, got {order}")
    cfg = cfg or (DiffConfig() if order == 1 else SECOND_DIFF)

    def ev(t: float) -> float:
        v = float(f(t))
        if not math.isfinite(v):
            raise EvaluationError(f"non-finite value {v} at x={t}", abscissa=t)
        return v

    h = 2.0 * cfg.step(x)
    f0 = ev(x) if order == 2 else 0.0
    table: list[float] = []
    for _ in range(cfg.richardson_levels + 1):
        fp, fm = ev(x + h), ev(x - h)
        if order == 1:
            table.append((fp - fm) / (2.0 * h))
        else:
            table.append((fp - 2.0 * f0 + fm) / (h * h))
        h *= 0.5
    # Neville-style elimination of h^2, h^4, ... terms
    for j in range(1, len(table)):
        factor = 4.0**j
        for i in range(len(table) - 1, j - 1, -1):
            table[i] = (factor * table[i] - table[i - 1]) / (factor - 1.0)
    return table[-1]


# Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# node order: -x0..-x6, 0, x6..x0
GK15_NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[-2::-1]])
GK15_KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[-2::-1]])
GK15_GAUSS_WEIGHTS = np.zeros(15)
GK15_GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GK15_GAUSS_WEIGHTS[7] = _WG[3]
GK15_GAUSS_WEIGHTS[[9, 11, 13]] = _WG[2::-1]


def _gk15(f: Callable[[float], float], lo: float, hi: float) -> tuple[float, float]:
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    vals = np.empty(15)
    for i, t in enumerate(center + half * GK15_NODES):
        v = float(f(t))
        if not math.isfinite(v):
            raise EvaluationError(f"integrand is {v} at x={t}", abscissa=t)
        vals[i] = v
    resk = float(GK15_KRONROD_WEIGHTS @ vals)
    resg = float(GK15_GAUSS_WEIGHTS @ vals)
    resabs = float(GK15_KRONROD_WEIGHTS @ np.abs(vals))
    resasc = float(GK15_KRONROD_WEIGHTS @ np.abs(vals - 0.5 * resk))
    hl = abs(half)
    err = abs((resk - resg) * half)
    resasc *= hl
    resabs *= hl
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > _TINY / (50.0 * _EPS):
        err = max(50.0 * _EPS * resabs, err)
    return resk * half, err


def integrate_1d(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    cfg: QuadConfig | None = None,
) -> float:
    """Adaptive Gauss-Kronrod (7/15) quadrature of ``f`` over ``[lo, hi]``.

    The interval with the largest error estimate is bisected until the
    summed estimate drops below ``max(abs_tol, rel_tol * |value|)``.
    Reversed limits return the negated integral.

    Raises:
        ConvergenceError: the subdivision budget ran out; the best
            estimate and its error are attached.
        EvaluationError: ``f`` returned a non-finite value.
    """
    cfg = cfg or QuadConfig()
    if lo == hi:
        return 0.0
    if hi < lo:
        return -integrate_1d(f, hi, lo, cfg)

    value, err = _gk15(f, lo, hi)
    heap = [(-err, lo, hi, value)]
    frozen_val = 0.0
    frozen_err = 0.0
    total_val, total_err = value, err
    n_sub = 1
    while total_err > max(cfg.abs_tol, cfg.rel_tol * abs(total_val)):
        if not heap:
            break
        if n_sub >= cfg.max_subdivisions:
            raise ConvergenceError(
                f"integrate_1d: {n_sub} subdivisions on [{lo}, {hi}] left error {total_err:.3e}",
                estimate=total_val,
                error=total_err,
            )
        neg_e, a, b, v = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if not (a < mid < b) or (b - a) < 8.0 * _EPS * max(abs(a), abs(b)):
            frozen_val += v
            frozen_err += -neg_e
            continue
        v1, e1 = _gk15(f, a, mid)
        v2, e2 = _gk15(f, mid, b)
        heapq.heappush(heap, (-e1, a, mid, v1))
        heapq.heappush(heap, (-e2, mid, b, v2))
        n_sub += 1
        total_val = frozen_val + math.fsum(item[3] for item in heap)
        total_err = frozen_err + math.fsum(-item[0] for item in heap)
    if total_err > max(cfg.abs_tol, cfg.rel_tol * abs(total_val)):
        raise ConvergenceError(
            f"integrate_1d: roundoff limits accuracy on [{lo}, {hi}], error {total_err:.3e}",
            estimate=total_val,
            error=total_err,
        )
    return total_val


@dataclass(frozen=True)
class Region:
    """Planar region given by a membership predicate and a bounding box.

    ``bbox`` is ``(x_lo, x_hi, y_lo, y_hi)``; the predicate must be false
    outside it.  With ``vectorized=True`` the predicate must also accept a
    numpy array of ``y`` values for a scalar ``x`` and return a boolean
    array, which makes dense probing cheap.
    """

    contains: Callable[[float, float], bool]
    bbox: tuple[float, float, float, float]
    vectorized: bool = False


def _inside_segments(
    inside: Callable[[float], bool], lo: float, hi: float, probes: int, vectorized: bool
) -> list[tuple[float, float]]:
    ys = np.linspace(lo, hi, probes)
    if vectorized:
        flags = [bool(f) for f in np.asarray(inside(ys))]
    else:
        flags = [bool(inside(float(y))) for y in ys]
    tol = 4.0 * _EPS * max(1.0, abs(lo), abs(hi))

    def edge(y_in: float, y_out: float) -> float:
        while abs(y_out - y_in) > tol:
            mid = 0.5 * (y_in + y_out)
            if mid in (y_in, y_out):
                break
            if bool(inside(mid)):
                y_in = mid
            else:
                y_out = mid
        return y_in

    segments = []
    start = float(ys[0]) if flags[0] else None
    for j in range(1, probes):
        if flags[j] and not flags[j - 1]:
            start = edge(float(ys[j]), float(ys[j - 1]))
        elif flags[j - 1] and not flags[j]:
            segments.append((start, edge(float(ys[j - 1]), float(ys[j]))))
            start = None
    if start is not None:
        segments.append((start, float(ys[-1])))
    return [(a, b) for a, b in segments if b > a]


def integrate_2d(
    f: Callable[[float, float], float],
    region: Region,
    cfg: QuadConfig | None = None,
    probes: int = 129,
) -> float:
    """Iterated adaptive quadrature of ``f`` over ``region``.

    For every outer abscissa the inner line is probed at ``probes`` points,
    each in/out transition is located by bisection on the predicate, and the
    inside segments are integrated with :func:`integrate_1d`.  Features of
    the region narrower than the probe spacing can be missed.
    """
    cfg = cfg or QuadConfig(abs_tol=1e-10, rel_tol=1e-10)
    x_lo, x_hi, y_lo, y_hi = region.bbox
    inner_cfg = QuadConfig(
        abs_tol=cfg.abs_tol / max(1.0, x_hi - x_lo) * 0.1,
        rel_tol=cfg.rel_tol * 0.1,
        max_subdivisions=cfg.max_subdivisions,
    )

    def slice_integral(x: float) -> float:
        segs = _inside_segments(lambda y: region.contains(x, y), y_lo, y_hi, probes, region.vectorized)
        return math.fsum(integrate_1d(lambda y: f(x, y), a, b, inner_cfg) for a, b in segs)

    return integrate_1d(slice_integral, x_lo, x_hi, cfg)


def fit_singular_limit(
    samples: Sequence[tuple[float, float]],
    corrections: int = 0,
    singular: bool = True,
) -> LimitEstimate:
    """Least-squares fit of ``value ~ A/a + B (+ sum_j c_j a**j)``.

    Args:
        samples: ``(a, value)`` pairs with ``a`` strictly decreasing and
            positive; at least three of them.
        corrections: number of regular correction columns ``a, a**2, ...``
            appended to the basis.
        singular: include the ``1/a`` column. With ``False`` the model is a
            plain polynomial in ``a`` and ``singular_coeff`` is reported as 0.

    Raises:
        InputError: fewer than three samples, non-decreasing or non-positive
            ``a``, or fewer samples than basis functions.
    """
    if len(samples) < 3:
        raise InputError(f"need at least 3 samples, got {len(samples)}")
    a = np.array([s[0] for s in samples], dtype=float)
    v = np.array([s[1] for s in samples], dtype=float)
    if np.any(a <= 0):
        raise InputError("all a must be positive")
    if np.any(np.diff(a) >= 0):
        raise InputError("a must be strictly decreasing")
    if corrections < 0:
        raise InputError("corrections must be >= 0")
    n_cols = int(singular) + 1 + corrections
    if len(a) < n_cols:
        raise InputError(f"{n_cols} basis functions need at least {n_cols} samples")

    def solve(a_: np.ndarray, v_: np.ndarray) -> tuple[np.ndarray, float]:
        cols = ([1.0 / a_] if singular else []) + [np.ones_like(a_)]
        cols += [a_**j for j in range(1, corrections + 1)]
        m = np.column_stack(cols)
        scale = np.linalg.norm(m, axis=0)
        coef, *_ = np.linalg.lstsq(m / scale, v_, rcond=None)
        coef = coef / scale
        return coef, float(np.linalg.norm(m @ coef - v_))

    coef, residual = solve(a, v)
    if singular:
        big_a, b, rest = float(coef[0]), float(coef[1]), coef[2:]
    else:
        big_a, b, rest = 0.0, float(coef[0]), coef[1:]

    err = math.nan
    if len(a) - 1 >= max(n_cols, 3):
        coef2, _ = solve(a[1:], v[1:])
        err = float(np.max(np.abs(coef2[: 1 + int(singular)] - coef[: 1 + int(singular)])))
    return LimitEstimate(
        singular_coeff=big_a,
        constant_term=b,
        residual=residual,
        error_estimate=err,
        corrections=tuple(float(c) for c in rest),
    )
