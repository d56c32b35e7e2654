"""Pure-Python versions of the compiled kernels.

Same algorithms, same termination rules as ``_core.pyx``; the Gauss-Kronrod
nodes of one panel are evaluated as a numpy vector.
"""

from __future__ import annotations

import math

import numpy as np

from ..numerics import GK15_GAUSS_WEIGHTS, GK15_KRONROD_WEIGHTS, GK15_NODES

_EPS = float(np.finfo(float).eps)
_TINY = float(np.finfo(float).tiny)
_HALF_PI = 0.5 * math.pi
_THETA_SERIES = 1e-4


def _panel(vals: np.ndarray, half: float) -> tuple[float, float]:
    resk = float(GK15_KRONROD_WEIGHTS @ vals)
    resg = float(GK15_GAUSS_WEIGHTS @ vals)
    resabs = float(GK15_KRONROD_WEIGHTS @ np.abs(vals)) * half
    resasc = float(GK15_KRONROD_WEIGHTS @ np.abs(vals - 0.5 * resk)) * half
    err = abs((resk - resg) * half)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > _TINY / (50.0 * _EPS):
        err = max(50.0 * _EPS * resabs, err)
    return resk * half, err


def _adapt(panel_fn, lo: float, hi: float, abs_tol: float, rel_tol: float, max_sub: int):
    """Adaptive bisection; returns (value, error, converged)."""
    v, e = panel_fn(lo, hi)
    los, his, vals, errs = [lo], [hi], [v], [e]
    while True:
        total = math.fsum(vals)
        err = math.fsum(errs)
        if err <= max(abs_tol, rel_tol * abs(total)):
            return total, err, True
        if len(vals) >= max_sub:
            return total, err, False
        i = int(np.argmax(errs))
        a, b = los[i], his[i]
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            return total, err, False
        v1, e1 = panel_fn(a, mid)
        v2, e2 = panel_fn(mid, b)
        his[i], vals[i], errs[i] = mid, v1, e1
        los.append(mid)
        his.append(b)
        vals.append(v2)
        errs.append(e2)


def _density(theta: float, r: np.ndarray, k: float) -> np.ndarray:
    """σ:e times the polar area factor r."""
    big_k = 1.0 + k / (r * r)
    c2t = math.cos(2.0 * theta)
    ct = math.cos(theta)
    s22 = 2.0 * (-2.0 * theta + big_k * math.sin(2.0 * theta))
    s12 = 2.0 * big_k * c2t
    return (s22 * math.tan(theta) + 2.0 * s12 * c2t / (4.0 * ct * ct)) * r


def lens_energy_integral(
    c2: float, c1: float, a: float, k: float, abs_tol: float, rel_tol: float, max_sub: int
) -> tuple[float, float, bool]:
    """``∫ σ:e dA`` over the lens between ``c2`` and ``c1`` outside ``|x| < a``.

    Returns (value, error estimate, converged).
    """
    th_a = math.acos(a / (2.0 * c1))
    th_d = math.acos(a / (2.0 * c2))
    inner_abs = 0.1 * abs_tol / max(1.0, 2.0 * th_a)
    inner_rel = 0.1 * rel_tol
    failed = []

    def slice_integral(theta: float) -> float:
        r_hi = 2.0 * c1 * math.cos(theta)
        r_lo = max(a, 2.0 * c2 * math.cos(theta))
        if r_hi <= r_lo:
            return 0.0

        def panel(lo: float, hi: float) -> tuple[float, float]:
            half = 0.5 * (hi - lo)
            rs = 0.5 * (lo + hi) + half * GK15_NODES
            return _panel(_density(theta, rs, k), half)

        v, _, ok = _adapt(panel, r_lo, r_hi, inner_abs, inner_rel, max_sub)
        if not ok:
            failed.append(theta)
        return v

    def outer_panel(lo: float, hi: float) -> tuple[float, float]:
        half = 0.5 * (hi - lo)
        ts = 0.5 * (lo + hi) + half * GK15_NODES
        vals = np.array([slice_integral(float(t)) for t in ts])
        return _panel(vals, half)

    total = 0.0
    total_err = 0.0
    ok_all = True
    pieces = [(-th_a, -th_d), (-th_d, th_d), (th_d, th_a)]
    share = [abs(b - a_) / (2.0 * th_a) for a_, b in pieces]
    for (lo, hi), w in zip(pieces, share):
        if hi <= lo:
            continue
        v, e, ok = _adapt(outer_panel, lo, hi, abs_tol * w, rel_tol, max_sub)
        total += v
        total_err += e
        ok_all = ok_all and ok
    return total, total_err, ok_all and not failed


def ellipticity_margin_min(R: float, k: float, nc: int, nt: int) -> tuple[float, int, int]:
    """Minimum of ``4θ cot θ (sin 2θ/(2θ) - 1) + k/c²`` on the scan grid.

    Returns (minimum, c index, θ index); ties go to the first index in
    row-major (c, θ) order.
    """
    c = 1.0 + (R - 1.0) * np.arange(nc) / (nc - 1)
    th = -_HALF_PI + math.pi * (np.arange(nt) + 1) / (nt + 1)
    small = np.abs(th) < _THETA_SERIES
    safe = np.where(small, 1.0, th)
    tct = np.where(small, 1.0 - th * th / 3.0, safe / np.tan(safe))
    bracket = np.where(small, -2.0 * th * th / 3.0, np.sin(2.0 * safe) / (2.0 * safe) - 1.0)
    margin = 4.0 * tct * bracket + k / (c * c)[:, None]
    flat = int(np.argmin(margin))
    i, j = divmod(flat, nt)
    return float(margin[i, j]), i, j
