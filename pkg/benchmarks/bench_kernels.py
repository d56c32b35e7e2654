"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one row per kernel and case with the best-of-N wall time of each
backend, the speedup and the largest difference in returned values.
"""

import argparse
import sys
import timeit

from cuspelastic._kernels import _fallback

try:
    from cuspelastic._kernels import _core
except ImportError:
    _core = None

CASES = [
    ("lens_energy_integral", (1.0, 2.0, 0.3, 1.0, 1e-11, 1e-12, 2000)),
    ("lens_energy_integral", (1.0, 2.0, 0.05, 5.0, 1e-11, 1e-12, 2000)),
    ("lens_energy_integral", (1.0, 1.5, 0.1, 0.0, 1e-11, 1e-12, 2000)),
    ("ellipticity_margin_min", (2.0, 0.0, 64, 64)),
    ("ellipticity_margin_min", (2.0, 1.0, 256, 256)),
]


def best_time(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    opts = ap.parse_args(argv)
    if _core is None:
        print("compiled extension not built; only the fallback is available", file=sys.stderr)
        return 1
    print(f"{'kernel':24s} {'args':34s} {'cython [s]':>11s} {'python [s]':>11s} {'speedup':>8s} {'max |diff|':>11s}")
    for name, args in CASES:
        fc, fp = getattr(_core, name), getattr(_fallback, name)
        tc = best_time(fc, args, opts.repeat)
        tp = best_time(fp, args, max(1, opts.repeat // 2))
        diff = max(abs(float(x) - float(y)) for x, y in zip(fc(*args), fp(*args)))
        label = ", ".join(f"{v:g}" for v in args[:4])
        print(f"{name:24s} {label:34s} {tc:11.2e} {tp:11.2e} {tp / tc:8.1f} {diff:11.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
