"""Entropy rate of random positive braids against crossing count.

    python3 experiments/entropy_vs_crossings.py [--strands 3] [--samples 40] [--t 1/2]

Exploratory: prints one row per crossing count with the mean and spread of
the entropy rate over regular chains.  Nothing here is asserted.
"""

import argparse
import random
import statistics

from burauwalk import diagram as dg
from burauwalk import markov


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--strands", type=int, default=3)
    ap.add_argument("--samples", type=int, default=40)
    ap.add_argument("--max-length", type=int, default=12)
    ap.add_argument("--t", default="1/2")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    n = args.strands
    print(f"{'crossings':>9} {'regular':>8} {'mean H':>10} {'stdev':>8} {'max H':>8}")
    for length in range(1, args.max_length + 1):
        values = []
        for _ in range(args.samples):
            word = " ".join(f"s{rng.randint(1, n - 1)}" for _ in range(length))
            d = dg.parse_braid(word, n)
            if markov.persistence_exponent(d) is None:
                continue
            values.append(markov.entropy_rate(d, args.t))
        if not values:
            print(f"{length:>9} {0:>8}")
            continue
        spread = statistics.pstdev(values) if len(values) > 1 else 0.0
        print(
            f"{length:>9} {len(values):>8} {statistics.fmean(values):>10.4f} "
            f"{spread:>8.4f} {max(values):>8.4f}"
        )


if __name__ == "__main__":
    main()
