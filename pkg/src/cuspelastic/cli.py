"""Command-line front end.

Subcommands::

    cuspelastic sample      --field NAME [--param-space cartesian|circle]
    cuspelastic verify      [--points N] [--seed S]
    cuspelastic integrals   [--a A | --a-seq START:COUNT]
    cuspelastic ellipticity

All take ``--R``, ``--k``, ``--grid``, ``--format {csv,json}``, ``--out PATH``
and ``--config FILE``.  A config file holds ``key = value`` lines using the
long option names (``R``, ``k``, ``grid``, ``format``, ``out``, ``a``,
``a_seq``, ``field``, ``param_space``, ``points``, ``seed``); command-line
flags override it.

Exit status: 0 success, 1 a hard check failed, 2 usage or configuration
error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__, boundary, elasticity, fields, geometry
from .errors import CuspElasticError, InputError
from .geometry import HALF_PI, LensDomain, Point2, PointClass
from .verification import Check, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

FIELDS = ("displacement", "strain", "stress", "lame", "energy-density")
SINGULAR = "singular"

DEFAULTS: dict[str, Any] = {
    "R": 2.0,
    "k": 0.0,
    "grid": 64,
    "format": None,
    "out": "-",
    "a": None,
    "a_seq": "0.4:7",
    "field": "displacement",
    "param_space": "cartesian",
    "points": 200,
    "seed": 0,
}
_CASTS: dict[str, Callable[[str], Any]] = {
    "R": float,
    "k": float,
    "grid": int,
    "format": str,
    "out": str,
    "a": float,
    "a_seq": str,
    "field": str,
    "param_space": str,
    "points": int,
    "seed": int,
}


class UsageError(Exception):
    pass


def _fmt(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _jsonable(v: Any) -> Any:
    if isinstance(v, (np.floating,)):
        v = float(v)
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def read_config(path: str) -> dict[str, Any]:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    out: dict[str, Any] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, val = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _CASTS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                out[key] = _CASTS[key](val)
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {val!r}") from exc
    return out


def parse_a_seq(text: str) -> list[float]:
    """``START:COUNT`` -> ``[START, START/2, ..., START/2**(COUNT-1)]``."""
    try:
        start_s, count_s = text.split(":")
        start, count = float(start_s), int(count_s)
    except ValueError as exc:
        raise UsageError(f"--a-seq expects START:COUNT, got {text!r}") from exc
    if not (0 < start < 2) or count < 3:
        raise UsageError("--a-seq needs 0 < START < 2 and COUNT >= 3")
    return [start * 0.5**n for n in range(count)]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--R", type=float, default=None, help="outer circle parameter (> 1)")
    common.add_argument("--k", type=float, default=None, help="material constant (>= 0)")
    common.add_argument("--grid", type=int, default=None, help="grid resolution")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", default=None, help="output path, '-' for stdout")
    common.add_argument("--config", default=None, help="flat key = value config file")

    parser = argparse.ArgumentParser(prog="cuspelastic", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", parents=[common], help="sample a field on a grid")
    p.add_argument("--field", choices=FIELDS, default=None)
    p.add_argument("--param-space", dest="param_space", choices=("cartesian", "circle"), default=None)

    p = sub.add_parser("verify", parents=[common], help="run the invariant checks")
    p.add_argument("--points", type=int, default=None, help="random interior points")
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("integrals", parents=[common], help="boundary integrals and a -> 0 limits")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--a", type=float, default=None, help="single ball radius")
    g.add_argument("--a-seq", dest="a_seq", default=None, help="START:COUNT, halving")

    sub.add_parser("ellipticity", parents=[common], help="strong-ellipticity scan")
    return parser


def resolve_config(args: argparse.Namespace) -> dict[str, Any]:
    """Merge defaults < config file < command-line flags and validate."""
    cfg = dict(DEFAULTS)
    if args.config:
        cfg.update(read_config(args.config))
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if args.command == "integrals" and getattr(args, "a", None) is not None:
        cfg["a_seq"] = None
    elif args.command == "integrals" and getattr(args, "a_seq", None) is not None:
        cfg["a"] = None
    if cfg["format"] is None:
        cfg["format"] = "csv" if args.command == "sample" else "json"
    if cfg["format"] not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, got {cfg['format']!r}")
    if not (math.isfinite(cfg["R"]) and cfg["R"] > 1):
        raise UsageError(f"R must exceed 1, got {cfg['R']}")
    if not (math.isfinite(cfg["k"]) and cfg["k"] >= 0):
        raise UsageError(f"k must be nonnegative, got {cfg['k']}")
    if cfg["grid"] < 2:
        raise UsageError(f"grid must be at least 2, got {cfg['grid']}")
    if args.command == "ellipticity" and cfg["grid"] < 32:
        raise UsageError("ellipticity needs grid >= 32")
    if cfg["field"] not in FIELDS:
        raise UsageError(f"unknown field {cfg['field']!r}")
    if cfg["param_space"] not in ("cartesian", "circle"):
        raise UsageError(f"unknown parameter space {cfg['param_space']!r}")
    if cfg["a"] is not None and not (0 < cfg["a"] < 2):
        raise UsageError("--a must satisfy 0 < a < 2")
    if cfg["points"] < 1:
        raise UsageError("--points must be positive")
    cfg["command"] = args.command
    return cfg


# --------------------------------------------------------------------------
# sample


_COLUMNS = {
    "displacement": ("u1", "u2"),
    "strain": ("e11", "e12", "e22"),
    "stress": ("sigma11", "sigma12", "sigma22"),
    "lame": ("mu", "lambda", "lambda_plus_2mu", "poisson"),
    "energy-density": ("sigma_e",),
}


def _field_values(name: str, p: Point2, k: float) -> tuple:
    if name == "displacement":
        return tuple(fields.displacement(p))
    if name == "strain":
        return tuple(fields.strain(p))
    mp = elasticity.MaterialPoint(p, k)
    if name == "stress":
        return tuple(elasticity.stress(mp))
    if name == "lame":
        return tuple(elasticity.lame(mp))
    return (elasticity.stress(mp).contract(fields.strain(p)),)


def _sample_points(cfg: dict) -> list[tuple[Point2, float | None, float | None]]:
    R, n = cfg["R"], cfg["grid"]
    dom = LensDomain(R, cfg["k"])
    pts: list[tuple[Point2, float | None, float | None]] = []
    if cfg["param_space"] == "circle":
        for c in np.linspace(1.0, R, n):
            for th in np.linspace(-HALF_PI, HALF_PI, n):
                c, th = float(c), float(th)
                pts.append((geometry.circle_point(c, th), c, th))
        return pts
    for i in range(n + 1):
        x1 = 2.0 * R * i / n
        for j in range(n + 1):
            x2 = -R + 2.0 * R * j / n
            p = Point2(x1, x2)
            if geometry.classify(dom, p) is PointClass.EXTERIOR:
                continue
            if x1 > 0:
                c = geometry.circle_of_point(p)
                th = math.atan2(x2, x1)
            else:
                c = th = None
            pts.append((p, c, th))
    return pts


def cmd_sample(cfg: dict) -> tuple[int, dict]:
    name = cfg["field"]
    cols = _COLUMNS[name]
    rows = []
    n_singular = 0
    for p, c, th in _sample_points(cfg):
        singular = p == (0.0, 0.0) or (th is not None and abs(th) >= HALF_PI)
        vals: tuple | None = None
        if not singular:
            try:
                vals = _field_values(name, p, cfg["k"])
            except (ArithmeticError, ValueError):
                singular = True
        if singular:
            n_singular += 1
        row = {"x1": p[0], "x2": p[1], "c": c, "theta": th}
        for col, v in zip(cols, vals if vals else (None,) * len(cols)):
            row[col] = SINGULAR if singular else v
        row["flag"] = SINGULAR if singular else ("undefined_poisson" if name == "lame" and vals[3] is None else "ok")
        rows.append(row)
    header = ["x1", "x2", "c", "theta", *cols, "flag"]
    warnings = [f"{n_singular} singular point(s) emitted with flag 'singular'"] if n_singular else []
    return EXIT_OK, {"header": header, "rows": rows, "checks": [], "warnings": warnings}


# --------------------------------------------------------------------------
# verify / integrals / ellipticity


def cmd_verify(cfg: dict) -> tuple[int, dict]:
    checks = run_suite(cfg["R"], cfg["k"], cfg["grid"], cfg["points"], cfg["seed"])
    failed = [c for c in checks if c.status == "fail"]
    warnings = [f"check {c.name} failed: measured {c.measured:.3e} > {c.tolerance:.1e}" for c in failed]
    rows = [c.as_dict() for c in checks]
    header = ["name", "paper_ref", "status", "measured", "expected", "tolerance"]
    return (EXIT_FAIL if failed else EXIT_OK), {
        "header": header, "rows": rows, "checks": checks, "warnings": warnings,
        "results": {"passed": len(checks) - len(failed), "failed": len(failed)},
    }


def _report_row(a: float, rep: boundary.IntegralReport) -> dict:
    return {"a": a, **rep.as_dict()}


def cmd_integrals(cfg: dict) -> tuple[int, dict]:
    dom = LensDomain(cfg["R"], cfg["k"])
    R, k = dom.R, dom.k
    seq = [cfg["a"]] if cfg["a"] is not None else parse_a_seq(cfg["a_seq"])
    checks: list[Check] = []
    rows: list[dict] = []
    per_a = []
    for a in seq:
        f = boundary.total_force(dom, a)
        m = boundary.total_moment(dom, a)
        e = boundary.energy_report(dom, a)
        reps = [f.T1, f.T2, *f.arcs, *m.arcs, m.gamma, e.V1, e.V2, e.V1_reference, e.V2_reference,
                e.V_sum_reference, e.W_check]
        rows += [_report_row(a, r) for r in reps]
        per_a.append({
            "a": a,
            "T1": f.T1.quadrature_value,
            "T2a": f.T2.quadrature_value,
            "Gamma_a": m.gamma.quadrature_value,
            "E_a": e.decomposition.energy,
            "a_E_a": a * e.decomposition.energy,
            "decomposition": {"V1": e.decomposition.V1, "V2": e.decomposition.V2,
                              "W1": e.decomposition.W1, "W2": e.decomposition.W2},
            "force_equilibrium_gap": list(f.equilibrium_gap),
            "couple_equilibrium_gap": m.equilibrium_gap,
            "comparisons": [r.as_dict() for r in reps],
        })
        hard = [f.T2, *f.arcs, *m.arcs, m.gamma, e.V1, e.V2, e.W_check]
        worst = max(r.abs_difference for r in hard)
        checks.append(Check(f"closed_forms[a={a:.6g}]", "force, couple and energy antiderivatives",
                            "pass" if worst <= 1e-8 else "fail", worst, 0.0, 1e-8))
        checks.append(Check(f"T1_zero[a={a:.6g}]", "x1 resultant vanishes by symmetry",
                            "pass" if abs(f.T1.quadrature_value) <= 1e-10 else "fail",
                            abs(f.T1.quadrature_value), 0.0, 1e-10))
        checks.append(Check(f"published_V_forms[a={a:.6g}]", "published V1 + V2 expression", "info",
                            e.V_sum_reference.abs_difference, e.V_sum_reference.closed_form_value, 1e-8))

    results: dict[str, Any] = {"per_a": per_a, "orientation": [arc.describe() for arc in
                                                                geometry.punctured_boundary(dom, seq[0])]}
    warnings: list[str] = []
    if len(seq) >= 3:
        lim = boundary.limit_report(dom, seq)
        expected_a = 2.0 * k * (R - 1.0)
        results["limits"] = {
            "energy_singular_coeff": lim.energy_fit.singular_coeff,
            "energy_singular_coeff_expected": expected_a,
            "energy_singular_coeff_plain_fit": lim.energy_fit_plain.singular_coeff,
            "energy_constant_term": lim.energy_fit.constant_term,
            "T1_limit": lim.T1_fit.constant_term,
            "T2_limit": lim.T2_fit.constant_term,
            "tan_theta_A_gap": [r.tan_theta_A_gap for r in lim.rows],
        }
        results["gamma"] = {
            "quadrature_limit": lim.gamma_fit.constant_term,
            "quadrature_limit_error_estimate": lim.gamma_fit.error_estimate,
            "claimed_limit": lim.gamma_claim,
            "difference": lim.gamma_difference,
            "disclosure": lim.disclosure,
        }
        tol_a = 1e-3 if k > 0 else 1e-6
        checks += [
            Check("energy_singular_coefficient", "E_a ~ 2k(c1 - c2)/a",
                  "pass" if abs(lim.energy_fit.singular_coeff - expected_a) <= tol_a else "fail",
                  lim.energy_fit.singular_coeff, expected_a, tol_a),
            Check("T2_limit", "T2 -> 0 as a -> 0",
                  "pass" if abs(lim.T2_fit.constant_term) <= 1e-6 else "fail",
                  lim.T2_fit.constant_term, 0.0, 1e-6),
            Check("T1_limit", "T1 = 0",
                  "pass" if abs(lim.T1_fit.constant_term) <= 1e-10 else "fail",
                  lim.T1_fit.constant_term, 0.0, 1e-10),
            Check("gamma_limit", "claimed couple 4(R^2 - 1) pi", "info",
                  lim.gamma_fit.constant_term, lim.gamma_claim, None),
        ]
        warnings.append(lim.disclosure)
    failed = [c for c in checks if c.status == "fail"]
    warnings += [f"check {c.name} failed" for c in failed]
    header = ["a", "name", "quadrature_value", "closed_form_value", "abs_difference", "orientation"]
    return (EXIT_FAIL if failed else EXIT_OK), {
        "header": header, "rows": rows, "checks": checks, "warnings": warnings, "results": results,
    }


def cmd_ellipticity(cfg: dict) -> tuple[int, dict]:
    R, k, n = cfg["R"], cfg["k"], cfg["grid"]
    base = elasticity.ellipticity_scan(LensDomain(R, 0.0), n)
    kt = base.k_threshold
    ks = sorted({0.0, 0.25 * kt, 0.5 * kt, kt, kt + 0.01, 2.0 * kt, k})
    rows = []
    for kk in ks:
        s = elasticity.ellipticity_scan(LensDomain(R, kk), n) if kk else base
        rows.append({"k": kk, "min_margin": s.min_margin, "argmin_c": s.argmin_c,
                     "argmin_theta": s.argmin_theta, "elliptic": s.min_margin > 0})
    mine = next(r for r in rows if r["k"] == k)
    checks = [
        Check("ellipticity_margin", "lambda + 2 mu > 0 (strong ellipticity)", "info",
              mine["min_margin"], "> 0 for k > k_threshold", None),
        Check("k_threshold", "k large enough gives lambda + 2 mu > 0",
              "pass" if ellipticity_ok(R, kt, n) else "fail", kt, f"finite, grid {n}x{n}", 1e-6),
    ]
    failed = [c for c in checks if c.status == "fail"]
    warnings = [] if mine["min_margin"] > 0 else [
        f"lambda + 2 mu reaches {mine['min_margin']:.6g} < 0 for k = {k}: not strongly elliptic on this grid"]
    return (EXIT_FAIL if failed else EXIT_OK), {
        "header": ["k", "min_margin", "argmin_c", "argmin_theta", "elliptic"],
        "rows": rows, "checks": checks, "warnings": warnings,
        "results": {"k_threshold": kt, "grid": [n, n], "table": rows},
    }


def ellipticity_ok(R: float, kt: float, n: int) -> bool:
    above = elasticity.ellipticity_scan(LensDomain(R, kt + 0.01), n).min_margin
    return math.isfinite(kt) and kt > 0 and above > 0


COMMANDS = {
    "sample": cmd_sample,
    "verify": cmd_verify,
    "integrals": cmd_integrals,
    "ellipticity": cmd_ellipticity,
}


def render(cfg: dict, payload: dict) -> str:
    if cfg["format"] == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(payload["header"])
        for row in payload["rows"]:
            w.writerow([_fmt(row.get(col)) for col in payload["header"]])
        return buf.getvalue()
    doc = {
        "config": {k: v for k, v in cfg.items()},
        "results": payload.get("results", payload["rows"]),
        "checks": [c.as_dict() for c in payload["checks"]],
        "warnings": payload["warnings"],
    }
    return json.dumps(_jsonable(doc), indent=2) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        cfg = resolve_config(args)
        status, payload = COMMANDS[args.command](cfg)
    except OSError as exc:
        print(f"cuspelastic: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, InputError) as exc:
        print(f"cuspelastic: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CuspElasticError as exc:
        print(f"cuspelastic: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = render(cfg, payload)
    try:
        if cfg["out"] in ("-", ""):
            sys.stdout.write(text)
        else:
            with open(cfg["out"], "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); not an error of ours
        sys.stderr.close()
        return status
    except OSError as exc:
        print(f"cuspelastic: cannot write {cfg['out']}: {exc}", file=sys.stderr)
        return EXIT_IO
    for w in payload["warnings"]:
        print(f"warning: {w}", file=sys.stderr)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
