# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the area-energy integral and the ellipticity scan.

The algorithms mirror ``_fallback.py`` step for step so that both backends
agree to quadrature tolerance.
"""

from libc.math cimport acos, cos, sin, tan, fabs, pow, fmax, fmin, M_PI
from libc.stdlib cimport malloc, free

cdef double EPS = 2.220446049250313e-16
cdef double TINY = 2.2250738585072014e-308
cdef double THETA_SERIES = 1e-4

cdef double[15] NODES
cdef double[15] WK
cdef double[15] WG

cdef double[8] _XGK = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
]
cdef double[8] _WGK = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
]
cdef double[4] _WG = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
]

cdef int _i
for _i in range(7):
    NODES[_i] = -_XGK[_i]
    NODES[14 - _i] = _XGK[_i]
    WK[_i] = _WGK[_i]
    WK[14 - _i] = _WGK[_i]
    WG[_i] = 0.0
    WG[14 - _i] = 0.0
NODES[7] = 0.0
WK[7] = _WGK[7]
WG[7] = _WG[3]
WG[1] = _WG[0]
WG[13] = _WG[0]
WG[3] = _WG[1]
WG[11] = _WG[1]
WG[5] = _WG[2]
WG[9] = _WG[2]


ctypedef double (*integrand_t)(double, void*) noexcept nogil


cdef struct SliceCtx:
    double theta
    double k


cdef struct LensCtx:
    double c1
    double c2
    double a
    double k
    double inner_abs
    double inner_rel
    int max_sub
    int failed


cdef void _panel(integrand_t f, void* ctx, double lo, double hi,
                 double* value, double* error) noexcept nogil:
    cdef double center = 0.5 * (lo + hi)
    cdef double half = 0.5 * (hi - lo)
    cdef double[15] vals
    cdef double resk = 0.0, resg = 0.0, resabs = 0.0, resasc = 0.0, err
    cdef int i
    for i in range(15):
        vals[i] = f(center + half * NODES[i], ctx)
        resk += WK[i] * vals[i]
        resg += WG[i] * vals[i]
        resabs += WK[i] * fabs(vals[i])
    for i in range(15):
        resasc += WK[i] * fabs(vals[i] - 0.5 * resk)
    resabs *= half
    resasc *= half
    err = fabs((resk - resg) * half)
    if resasc != 0.0 and err != 0.0:
        err = resasc * fmin(1.0, pow(200.0 * err / resasc, 1.5))
    if resabs > TINY / (50.0 * EPS):
        err = fmax(50.0 * EPS * resabs, err)
    value[0] = resk * half
    error[0] = err


cdef int _adapt(integrand_t f, void* ctx, double lo, double hi,
                double abs_tol, double rel_tol, int max_sub,
                double* value, double* error) noexcept nogil:
    """Return 1 on convergence, 0 otherwise; value/error always set."""
    cdef double* los = <double*> malloc(max_sub * sizeof(double))
    cdef double* his = <double*> malloc(max_sub * sizeof(double))
    cdef double* vals = <double*> malloc(max_sub * sizeof(double))
    cdef double* errs = <double*> malloc(max_sub * sizeof(double))
    cdef int n = 1, i, worst, ok = 0
    cdef double total, err, a, b, mid, v1, e1, v2, e2
    if los == NULL or his == NULL or vals == NULL or errs == NULL:
        free(los); free(his); free(vals); free(errs)
        value[0] = 0.0
        error[0] = 1e300
        return 0
    los[0] = lo
    his[0] = hi
    _panel(f, ctx, lo, hi, &vals[0], &errs[0])
    while True:
        total = 0.0
        err = 0.0
        worst = 0
        for i in range(n):
            total += vals[i]
            err += errs[i]
            if errs[i] > errs[worst]:
                worst = i
        if err <= fmax(abs_tol, rel_tol * fabs(total)):
            ok = 1
            break
        if n >= max_sub:
            break
        a = los[worst]
        b = his[worst]
        mid = 0.5 * (a + b)
        if not (a < mid and mid < b):
            break
        _panel(f, ctx, a, mid, &v1, &e1)
        _panel(f, ctx, mid, b, &v2, &e2)
        his[worst] = mid
        vals[worst] = v1
        errs[worst] = e1
        los[n] = mid
        his[n] = b
        vals[n] = v2
        errs[n] = e2
        n += 1
    free(los); free(his); free(vals); free(errs)
    value[0] = total
    error[0] = err
    return ok


cdef double _density(double r, void* ctx) noexcept nogil:
    cdef SliceCtx* s = <SliceCtx*> ctx
    cdef double theta = s.theta
    cdef double big_k = 1.0 + s.k / (r * r)
    cdef double c2t = cos(2.0 * theta)
    cdef double ct = cos(theta)
    cdef double s22 = 2.0 * (-2.0 * theta + big_k * sin(2.0 * theta))
    cdef double s12 = 2.0 * big_k * c2t
    return (s22 * tan(theta) + 2.0 * s12 * c2t / (4.0 * ct * ct)) * r


cdef double _slice(double theta, void* ctx) noexcept nogil:
    cdef LensCtx* L = <LensCtx*> ctx
    cdef double r_hi = 2.0 * L.c1 * cos(theta)
    cdef double r_lo = fmax(L.a, 2.0 * L.c2 * cos(theta))
    cdef SliceCtx s
    cdef double v, e
    if r_hi <= r_lo:
        return 0.0
    s.theta = theta
    s.k = L.k
    if not _adapt(_density, &s, r_lo, r_hi, L.inner_abs, L.inner_rel, L.max_sub, &v, &e):
        L.failed = 1
    return v


def lens_energy_integral(double c2, double c1, double a, double k,
                         double abs_tol, double rel_tol, int max_sub):
    """``∫ σ:e dA`` over the lens between ``c2`` and ``c1`` outside ``|x| < a``.

    Returns (value, error estimate, converged).
    """
    cdef double th_a = acos(a / (2.0 * c1))
    cdef double th_d = acos(a / (2.0 * c2))
    cdef LensCtx L
    cdef double total = 0.0, total_err = 0.0, v, e, lo, hi, w
    cdef int ok_all = 1, p
    cdef double[3] los = [-th_a, -th_d, th_d]
    cdef double[3] his = [-th_d, th_d, th_a]
    L.c1 = c1
    L.c2 = c2
    L.a = a
    L.k = k
    L.inner_abs = 0.1 * abs_tol / fmax(1.0, 2.0 * th_a)
    L.inner_rel = 0.1 * rel_tol
    L.max_sub = max_sub
    L.failed = 0
    with nogil:
        for p in range(3):
            lo = los[p]
            hi = his[p]
            if hi <= lo:
                continue
            w = (hi - lo) / (2.0 * th_a)
            if not _adapt(_slice, &L, lo, hi, abs_tol * w, rel_tol, max_sub, &v, &e):
                ok_all = 0
            total += v
            total_err += e
    return total, total_err, bool(ok_all and not L.failed)


def ellipticity_margin_min(double R, double k, int nc, int nt):
    """Minimum of ``4θ cot θ (sin 2θ/(2θ) - 1) + k/c²`` on the scan grid.

    Returns (minimum, c index, θ index); ties go to the first index in
    row-major (c, θ) order.
    """
    cdef int i, j, bi = 0, bj = 0
    cdef double c, th, tct, bracket, g, m, best = 1e300
    cdef double* gvals = <double*> malloc(nt * sizeof(double))
    if gvals == NULL:
        raise MemoryError()
    for j in range(nt):
        th = -0.5 * M_PI + M_PI * (j + 1) / (nt + 1)
        if fabs(th) < THETA_SERIES:
            tct = 1.0 - th * th / 3.0
            bracket = -2.0 * th * th / 3.0
        else:
            tct = th / tan(th)
            bracket = sin(2.0 * th) / (2.0 * th) - 1.0
        gvals[j] = 4.0 * tct * bracket
    for i in range(nc):
        c = 1.0 + (R - 1.0) * i / (nc - 1)
        for j in range(nt):
            m = gvals[j] + k / (c * c)
            if m < best:
                best = m
                bi = i
                bj = j
    free(gvals)
    return best, bi, bj
