#!/usr/bin/env python3
"""Measure how exhaustive QUBO search time grows with variable count.

Times the Gray-code scanner on random dense instances and fits
log2(time) against n; a slope near 1 confirms the expected doubling per
added variable.
"""

import argparse

import numpy as np

from bbsolver.oracle import exact_qubo
from bbsolver.qubo import QuboMatrix


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="16,18,20,22,24")
    parser.add_argument("--seed", type=int, default=13)
    parser.add_argument("--repeats", type=int, default=3, help="best-of-k timing per size")
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    sizes = [int(s) for s in args.sizes.split(",")]

    exact_qubo(QuboMatrix(8, np.triu(rng.normal(size=(8, 8)))))  # warm the JIT

    times = []
    for n in sizes:
        q = QuboMatrix(n, np.triu(rng.normal(size=(n, n))))
        best = min(exact_qubo(q).elapsed for _ in range(args.repeats))
        times.append(best)
        print(f"n={n:>3}  best of {args.repeats}: {best:.5f} s")

    slope = float(np.polyfit(sizes, np.log2(times), 1)[0])
    print(f"\nlog2(time) vs n slope: {slope:.3f} (1.0 = exact doubling per variable)")


if __name__ == "__main__":
    main()
