"""Compare the compiled and pure-Python subset-search kernels.

    python3 benchmarks/bench_enumerate.py [--repeat N]

Both paths run the same prefix tasks on the same product table; the script
checks that their outputs agree and prints wall time per path.
"""
import argparse
import time

import numpy as np

from smalldoubling import Heisenberg, IntegerLattice
from smalldoubling.search import BallSpec, EnumerationTask, ball, product_table
from smalldoubling.search import kernels
from smalldoubling.search._accel import HAVE_NUMBA
from smalldoubling.search.enumerate import _prefixes

CASES = [
    ("Z r12, k=6, |2S| <= 3k-3", EnumerationTask(BallSpec.standard(IntegerLattice(1), 12), 6, 3, -3)),
    ("Z^2 r2, k=5, |2S| <= 3k-2", EnumerationTask(BallSpec.standard(IntegerLattice(2), 2), 5, 3, -2)),
    ("Heisenberg r2, k=4, |S^2| <= 10", EnumerationTask(BallSpec.standard(Heisenberg(), 2), 4, 3, -2)),
]


def run(fn, P, nvals, k, bound, prefixes):
    rows = []
    for pre in prefixes:
        cap = 1 << 12
        while True:
            out = np.empty((cap, k), np.int64)
            sq = np.empty(cap, np.int64)
            got = fn(P, nvals, k, bound, np.asarray(pre, np.int64), out, sq)
            if got >= 0:
                rows.append(out[:got].copy())
                break
            cap *= 2
    return np.concatenate(rows) if rows else np.empty((0, k), np.int64)


def timed(fn, *args, repeat=1):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    paths = [("python", kernels.search_prefix_py)]
    if HAVE_NUMBA:
        paths.append(("numba", kernels.search_prefix_jit))
    print(f"{'case':36} {'subsets':>8} " + " ".join(f"{p:>10}" for p, _ in paths) + "  speedup")
    for label, task in CASES:
        elems = ball(task.ball)
        P, values = product_table(task.ball.spec, elems)
        prefixes = _prefixes(len(elems), task.k, range(len(elems) - task.k + 1))
        if HAVE_NUMBA:  # compile outside the timed region
            run(kernels.search_prefix_jit, P, len(values), task.k, task.bound, prefixes[:1])
        times, outs = [], []
        for _, fn in paths:
            t, out = timed(run, fn, P, len(values), task.k, task.bound, prefixes, repeat=args.repeat)
            times.append(t)
            outs.append(out)
        assert all(np.array_equal(outs[0], o) for o in outs[1:]), "kernel outputs differ"
        speed = f"{times[0] / times[-1]:7.1f}x" if len(times) > 1 else "    n/a"
        cells = " ".join(f"{t * 1000:8.1f}ms" for t in times)
        print(f"{label:36} {len(outs[0]):>8} {cells}  {speed}")


if __name__ == "__main__":
    main()
