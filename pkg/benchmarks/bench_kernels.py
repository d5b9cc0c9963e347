"""Time the compiled kernels against their plain-numpy bodies.

    python3 benchmarks/bench_kernels.py [--repeat N]

The numpy column comes from a child process started with
``SCFSEC_DISABLE_NUMBA=1``, since ``.py_func`` alone would still call the
compiled inner kernels.
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from scfsec import _accel, kernels
from scfsec.optimizer import canonical_pairs


def best_of(fn, repeat):
    fn()  # warm-up (compilation for numba)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    pairs = canonical_pairs(8)
    a1s = np.array([p.a1 for p in pairs], dtype=np.int64)
    a2s = np.array([p.a2 for p in pairs], dtype=np.int64)
    ratio_args = (kernels.PLAIN, a1s, a2s, np.array([1000.0, 300.0]), kernels.GRID_LO, kernels.GRID_HI,
                  kernels.GRID_POINTS, kernels.KEEP_BRACKETS, kernels.RATIO_TOL)
    he_args = (100.0, 100.0, 100.0, 0.0, 64, 30.0, 1e-8, 50)
    return [
        (f"search_pairs ({a1s.size} pairs)", kernels.search_pairs, ratio_args),
        ("he_search", kernels.he_search, he_args),
    ]


def measure(repeat):
    return {name: best_of(lambda: fn(*fargs), repeat) for name, fn, fargs in cases()}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.json:
        print(json.dumps(measure(args.repeat)))
        return
    here = measure(args.repeat)
    env = dict(os.environ, SCFSEC_DISABLE_NUMBA="1")
    child = subprocess.run([sys.executable, __file__, "--json", "--repeat", str(args.repeat)],
                           env=env, capture_output=True, text=True, check=True)
    slow = json.loads(child.stdout)
    print(f"backend in this process: {_accel.BACKEND}")
    print(f"{'kernel':32s} {'numba [ms]':>12s} {'numpy [ms]':>12s} {'speedup':>8s}")
    for name, t in here.items():
        if _accel.HAS_NUMBA:
            print(f"{name:32s} {t * 1e3:12.2f} {slow[name] * 1e3:12.2f} {slow[name] / t:8.1f}")
        else:
            print(f"{name:32s} {'-':>12s} {slow[name] * 1e3:12.2f} {'-':>8s}")


if __name__ == "__main__":
    main()
