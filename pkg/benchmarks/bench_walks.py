"""Compiled vs pure-Python walk kernel.

    python3 benchmarks/bench_walks.py [--trials N] [--repeat R]

Both kernels consume the same SplitMix64 streams, so the counts must match
exactly; the script checks that before reporting timings.
"""

import argparse
import time

import numpy as np

from burauwalk import diagram as dg
from burauwalk import kernels, markov

CASES = [
    ("s1", 2),
    ("s1 s2 s1 s2", 3),
    ("s1 s2 s3 s1 s2 s3 s1", 4),
    ("s1 s1 s2 s2 s3 s3 s4 s4 s1 s3", 5),
]


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--t", default="1/2")
    args = ap.parse_args()

    if kernels.walk_counts_compiled is None:
        raise SystemExit("compiled kernel not built; reinstall with Cython available")

    print(f"trials per source: {args.trials}, t = {args.t}, best of {args.repeat}")
    print(f"{'braid':<34} {'n':>2} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for word, n in CASES:
        d = dg.parse_braid(word, n)

        def run(kernel):
            return markov.simulate_walks(d, args.t, args.trials, 2024, kernel=kernel).counts

        fast_t, fast = best_of(lambda: run(kernels.walk_counts_compiled), args.repeat)
        slow_t, slow = best_of(lambda: run(kernels.walk_counts_python), 1)
        if not np.array_equal(fast, slow):
            raise SystemExit(f"kernels disagree on {word!r}")
        print(f"{word:<34} {n:>2} {fast_t:>10.4f} {slow_t:>10.4f} {slow_t / fast_t:>7.0f}x")


if __name__ == "__main__":
    main()
