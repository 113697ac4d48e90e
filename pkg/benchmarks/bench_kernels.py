"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both modules are imported directly, so the result does not depend on
SPHERO_PURE_PYTHON.  Prints one row per kernel with the speedup.
"""
import argparse
import timeit

import numpy as np

from sphero import _pykernels

try:
    from sphero import _ckernels
except ImportError:
    _ckernels = None

CTRL = (1e-14, 1e-300, 10000, 3)

CASES = {
    "series_1f1 (z = 30i)": lambda k: k.series_1f1(0.25 + 0.1j, 0.5, 30j, *CTRL),
    "series_2f1 (z = 0.9)": lambda k: k.series_2f1(0.3, 1.3, 0.8, 0.9, *CTRL),
    "series_phi1": lambda k: k.series_phi1(1 + 0.25j, 0.25j, 1.5 + 0.25j, 0.5, 2j, 1e-13, 400),
    "series_phi2": lambda k: k.series_phi2(0.25j, -0.25j, 0.5, 4j, -4j, 1e-13, 400),
    "series_xi1": lambda k: k.series_xi1(0.25j, 0.5, 1 + 0.25j, 1.5 + 0.25j, 0.5, -2j, 1e-13, 400),
    "mp_recurrence (n = 200)": lambda k: k.mp_recurrence(0.25, 0.5, 0.0, np.pi / 2, 200),
    "rk4_mehlum (3000 steps)": lambda k: k.rk4_mehlum(
        1.0, np.array([0, 0, 0, 1, 0, 0, 0, 1, 0, -1, 0, 1.0]), 3000, 1e-3),
    "rk4_two_level (3000 steps)": lambda k: k.rk4_two_level(
        1.0, np.array([1.0, 0, 0, 0]), 3000, 1e-3),
    "rk4_rolling (3x3, 3000 steps)": lambda k: k.rk4_rolling(
        1.0, np.eye(3).reshape(-1), 3000, 1e-3),
}


def best_time(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; only the Python timings are shown")
    print(f"{'kernel':32s} {'python':>12s} {'cython':>12s} {'speedup':>9s}")
    for name, call in CASES.items():
        tp = best_time(lambda: call(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:32s} {tp * 1e6:10.1f}us {'-':>12s} {'-':>9s}")
            continue
        tc = best_time(lambda: call(_ckernels), args.repeat)
        print(f"{name:32s} {tp * 1e6:10.1f}us {tc * 1e6:10.1f}us {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
