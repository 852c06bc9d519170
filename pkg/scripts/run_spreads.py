"""Spread of every sparse paving valuation at small n, vs both bound readings.

Usage: python3 scripts/run_spreads.py [max_n] [rank]
"""

import sys

from dressian import all_sparse_paving_matroids, spread_report, valuation_from_matroid


def main():
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    rank = int(sys.argv[2]) if len(sys.argv) > 2 else 2
    for n in range(rank + 2, max_n + 1):
        for N in all_sparse_paving_matroids(rank, n):
            rep = spread_report(valuation_from_matroid(N))
            print(f"n={n} nonbases={len(N.nonbases())} spread={rep['spread']} "
                  f"bounds=({rep['bound_exponent_r_minus_2']},"
                  f"{rep['bound_exponent_r_minus_1']}) "
                  f"status={rep['exploration_status']}")


if __name__ == "__main__":
    main()
