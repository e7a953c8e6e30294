"""Compare the Cython kernels with the NumPy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints best-of-N wall times per kernel and the speed-up, plus the largest
relative difference between the two backends.
"""

import argparse
import timeit

import numpy as np

from singosc import _pykernels

try:
    from singosc import _ckernels
except ImportError:
    _ckernels = None

CASES = [
    ("hyp1f1_series  a=0.25 b=2.5, 2000 pts x<=60", "hyp1f1_series", (0.25, 2.5, np.linspace(0.0, 60.0, 2000))),
    ("hyp1f1_series  a=-0.75 b=-1.5, 2000 pts x<=60", "hyp1f1_series", (-0.75, -1.5, np.linspace(0.0, 60.0, 2000))),
    ("laguerre n=12 alpha=2.5, 20000 pts", "laguerre_recurrence", (12, 2.5, np.linspace(0.0, 40.0, 20000))),
    ("laguerre n=3 alpha=1.5, 20000 pts", "laguerre_recurrence", (3, 1.5, np.linspace(0.0, 40.0, 20000))),
]


def best(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=7)
    args = p.parse_args(argv)
    if _ckernels is None:
        print("Cython extension not built; only the fallback is available")
    print(f"{'case':48s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speed-up':>9s} {'max rel diff':>13s}")
    for label, name, a in CASES:
        py = getattr(_pykernels, name)
        tp = best(py, a, args.repeat)
        if _ckernels is None:
            print(f"{label:48s} {1e3 * tp:12.3f} {'-':>12s} {'-':>9s} {'-':>13s}")
            continue
        cy = getattr(_ckernels, name)
        tc = best(cy, a, args.repeat)
        rp, rc = np.asarray(py(*a), float), np.asarray(cy(*a), float)
        diff = float(np.max(np.abs(rp - rc) / np.maximum(np.abs(rp), 1e-300)))
        print(f"{label:48s} {1e3 * tp:12.3f} {1e3 * tc:12.3f} {tp / tc:8.1f}x {diff:13.2e}")


if __name__ == "__main__":
    main()
