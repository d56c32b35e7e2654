"""Acceptance criteria, one test each; every test prints a single status line.

Run directly (``python3 tests/test_acceptance.py``) for the summary alone.
"""

from __future__ import annotations

import json
import math
import sys

import numpy as np
import pytest

from cuspelastic import boundary, elasticity, fields, geometry
from cuspelastic.cli import main as cli_main
from cuspelastic.elasticity import MaterialPoint
from cuspelastic.geometry import HALF_PI, LensDomain
from cuspelastic.verification import random_lens_points

KS = (0.0, 1.0, 5.0)
N_RANDOM = 1000


def _line(n: int, ok: bool, detail: str) -> str:
    return f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def c01_tangency():
    worst = 0.0
    for c in np.linspace(1.0, 2.0, 50):
        for j in range(50):
            th = -HALF_PI + math.pi * (j + 1) / 51
            u = fields.displacement_on_circle(float(c), th)
            t = geometry.unit_tangent(float(c), geometry.circle_point(float(c), th))
            worst = max(worst, abs(math.hypot(*u) - c), abs(u[0] - c * t[0]), abs(u[1] - c * t[1]))
    lim = max(abs(fields.cusp_limit(c) - c) for c in (1.0, 1.5, 2.0))
    jump = abs(fields.cusp_jump(2.0, 1.0) - 1.0)
    ok = worst <= 1e-10 and lim <= 1e-6 and jump <= 1e-6
    return ok, f"tangency {worst:.2e} (<=1e-10), cusp limit {lim:.2e}, jump {jump:.2e} (<=1e-6)"


def c02_isochoric():
    th_max = HALF_PI - 1e-3
    worst = 0.0
    for c in np.linspace(1.0, 2.0, 100):
        for th in np.linspace(-th_max, th_max, 100):
            worst = max(worst, abs(fields.circle_dilatation(float(c), float(th))))
    return worst <= 1e-10, f"max |e_rr + e_tt| = {worst:.2e} (<=1e-10) on 100x100"


def c03_airy_recovery():
    pts = random_lens_points(2.0, N_RANDOM, seed=3)
    ana = fd = 0.0
    for k in KS:
        for p in pts:
            mp = MaterialPoint(p, k)
            s = elasticity.stress(mp)
            norm = math.sqrt(s.t11**2 + 2 * s.t12**2 + s.t22**2)
            for h, kind in ((elasticity.airy(mp).hessian, "a"), (elasticity.airy_hessian_fd(mp), "f")):
                err = max(abs(-h.t22 - s.t11), abs(h.t12 - s.t12), abs(-h.t11 - s.t22))
                if kind == "a":
                    ana = max(ana, err)
                else:
                    fd = max(fd, err / norm)
    ok = ana <= 1e-10 and fd <= 1e-6
    return ok, f"analytic {ana:.2e} (<=1e-10), difference Hessian {fd:.2e} relative (<=1e-6)"


def c04_equilibrium():
    pts = random_lens_points(2.0, N_RANDOM, seed=4, r_min=0.05)
    worst = max(
        max(abs(v) for v in elasticity.equilibrium_residual(MaterialPoint(p, k)))
        for k in KS
        for p in pts
    )
    return worst <= 1e-6, f"max relative |div sigma| = {worst:.2e} (<=1e-6)"


def c05_constitutive():
    pts = random_lens_points(2.0, N_RANDOM, seed=5)
    clos = ratio = 0.0
    for k in KS:
        for p in pts:
            mp = MaterialPoint(p, k)
            clos = max(clos, max(abs(v) for v in elasticity.constitutive_residual(mp)))
            lm = elasticity.lame(mp)
            r = elasticity.lame_from_ratios(elasticity.stress(mp), fields.strain(p))
            for got, want in ((r.mu, lm.mu), (r.mu_diag, lm.mu), (r.lambda_plus_mu, lm.lam + lm.mu),
                              (r.lambda_plus_2mu, lm.lambda_plus_2mu), (r.lam, lm.lam)):
                if got is not None:
                    ratio = max(ratio, abs(got - want) / max(1.0, abs(want)))
    ok = clos <= 1e-10 and ratio <= 1e-10
    return ok, f"closure {clos:.2e}, ratio identities {ratio:.2e} (both <=1e-10)"


def c06_ellipticity():
    s0 = elasticity.ellipticity_scan(LensDomain(2.0, 0.0))
    kt = s0.k_threshold
    above = elasticity.ellipticity_scan(LensDomain(2.0, kt + 0.01)).min_margin
    pts = random_lens_points(2.0, N_RANDOM, seed=6)
    mu_min = min(elasticity.lame(MaterialPoint(p, k)).mu for k in KS for p in pts)
    ok = s0.min_margin < 0 and math.isfinite(kt) and above > 0 and mu_min > 0
    return ok, (f"min(lambda+2mu) at k=0: {s0.min_margin:.4f} (<0); k_threshold {kt:.6f}, "
                f"margin there +0.01: {above:.2e} (>0); min mu {mu_min:.3e} (>0)")


def c07_closed_forms():
    worst = {"T2a": 0.0, "couple arcs": 0.0, "V1,V2 published": 0.0}
    per_k = {}
    for k in (0.0, 1.0):
        dom = LensDomain(2.0, k)
        vk = 0.0
        for a in (0.05, 0.1, 0.2, 0.4):
            f = boundary.total_force(dom, a)
            m = boundary.total_moment(dom, a)
            e = boundary.energy_report(dom, a)
            worst["T2a"] = max(worst["T2a"], f.T2.abs_difference)
            worst["couple arcs"] = max(worst["couple arcs"], *(r.abs_difference for r in m.arcs))
            vk = max(vk, e.V1_reference.abs_difference, e.V2_reference.abs_difference)
        per_k[k] = vk
        worst["V1,V2 published"] = max(worst["V1,V2 published"], vk)
    ok = all(v <= 1e-8 for v in worst.values())
    detail = ", ".join(f"{name} {v:.2e}" for name, v in worst.items())
    return ok, f"{detail} (all <=1e-8); published V error by k: " + \
        ", ".join(f"k={k:g}: {v:.3g}" for k, v in per_k.items())


def _limits(k: float) -> boundary.LimitReport:
    return boundary.limit_report(LensDomain(2.0, k))


def c08_force_limits():
    vals = []
    ok = True
    for k in (0.0, 1.0):
        lim = _limits(k)
        t1, t2 = lim.T1_fit.constant_term, lim.T2_fit.constant_term
        ok &= abs(t1) <= 1e-10 and abs(t2) <= 1e-6
        vals.append(f"k={k:g}: T1 {t1:.1e}, T2 {t2:.1e}")
    return ok, "; ".join(vals) + " (T1 <=1e-10, T2 <=1e-6)"


def c09_energy():
    a1 = _limits(1.0).energy_fit.singular_coeff
    a0 = _limits(0.0).energy_fit.singular_coeff
    ok = abs(a1 - 2.0) <= 1e-3 and abs(a0) <= 1e-6
    return ok, f"A(k=1) = {a1:.9f} (2 +- 1e-3), A(k=0) = {a0:.2e} (0 +- 1e-6)"


def c10_divergence():
    worst = 0.0
    for R in (1.5, 2.0):
        for k in KS:
            for a in (0.1, 0.3, 0.5):
                dom = LensDomain(R, k)
                eb = boundary.boundary_energy(dom, a).energy
                worst = max(worst, abs(boundary.area_energy(dom, a) - eb) / abs(eb))
    return worst <= 1e-4, f"max relative gap area vs boundary energy {worst:.2e} (<=1e-4) over 18 cases"


def c11_moment_disclosure(tmp_dir=None):
    import tempfile
    from pathlib import Path

    with tempfile.TemporaryDirectory(dir=tmp_dir) as d:
        out = Path(d) / "integrals.json"
        code = cli_main(["integrals", "--R", "2", "--k", "1", "--a-seq", "0.4:7", "--out", str(out)])
        doc = json.loads(out.read_text(encoding="utf-8"))
    g = doc.get("results", {}).get("gamma", {})
    has = all(key in g for key in ("quadrature_limit", "claimed_limit", "difference", "disclosure"))
    ok = code == 0 and has and abs(g["claimed_limit"] - 12 * math.pi) <= 1e-12
    ok = ok and abs(g["difference"] - (g["quadrature_limit"] - g["claimed_limit"])) <= 1e-12
    return ok, (f"report lists quadrature limit {g.get('quadrature_limit', float('nan')):.3e}, "
                f"claim {g.get('claimed_limit', float('nan')):.6f}, difference "
                f"{g.get('difference', float('nan')):.6f}, disclosure present: {'disclosure' in g}")


def c12_general_J():
    vals = {m: elasticity.general_J_derivative_check(m, 1.0) for m in (1, 2, 3)}
    ok = all(v <= 1e-4 for v in vals.values())
    return ok, ", ".join(f"m={m}: {v:.2e}" for m, v in vals.items()) + " (<=1e-4)"


CRITERIA = {
    1: c01_tangency,
    2: c02_isochoric,
    3: c03_airy_recovery,
    4: c04_equilibrium,
    5: c05_constitutive,
    6: c06_ellipticity,
    7: c07_closed_forms,
    8: c08_force_limits,
    9: c09_energy,
    10: c10_divergence,
    11: c11_moment_disclosure,
    12: c12_general_J,
}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n]()
    with capsys.disabled():
        print("\n" + _line(n, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]()
        failures += not ok
        print(_line(n, ok, detail))
    sys.exit(1 if failures else 0)
