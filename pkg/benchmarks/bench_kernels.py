"""Time the compiled kernels against the numpy fallback on a few sweep cells.

Usage: python benchmarks/bench_kernels.py [--samples N] [--repeat R]
"""
import argparse
import time

import numpy as np

from powerpvq import kernels
from powerpvq.benchmark import DEFAULT_GRID
from powerpvq.geometry import sample_unit_vectors

CELLS = [(2, 15), (8, 8), (15, 4), (16, 16), (20, 20)]


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled backend not built; only the numpy fallback is available")
    rng = np.random.default_rng(0)
    print(f"{'L':>3} {'K':>3} " + " ".join(f"{b + ' [s]':>12}" for b in backends) + f" {'speedup':>8} {'max |diff|':>11}")
    for l, k in CELLS:
        x = sample_unit_vectors(l, args.samples, rng)
        res = {b: best_time(lambda b=b: kernels.sq_errors_grid(x, k, DEFAULT_GRID, backend=b), args.repeat)
               for b in backends}
        line = f"{l:>3} {k:>3} " + " ".join(f"{res[b][0]:>12.4f}" for b in backends)
        if len(backends) > 1:
            diff = float(np.abs(res["cython"][1] - res["python"][1]).max())
            line += f" {res['python'][0] / res['cython'][0]:>7.1f}x {diff:>11.1e}"
        print(line)


if __name__ == "__main__":
    main()
