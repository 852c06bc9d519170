"""Bound reports over a small (n, r) grid, CSV to stdout.

Usage: python3 scripts/run_bounds.py [max_n]
"""

import sys

from dressian import bounds_report


def main():
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    print("n,r,quantity,bound,bound_source")
    for n in range(5, max_n + 1):
        for r in range(3, n - 1):
            rep = bounds_report(n, r, t_contraction=min(3, r))
            for quantity, value, source in rep.rows():
                print(f'{n},{r},{quantity},"{value}","{source}"')


if __name__ == "__main__":
    main()
