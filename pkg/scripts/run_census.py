"""Rank-2 cell censuses against the sparse paving counts, plus dims.

Usage: python3 scripts/run_census.py [max_n]
"""

import sys

from dressian import Matroid, enumerate_rank2_cells, sparse_paving_census


def main():
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    for n in range(4, max_n + 1):
        cells = enumerate_rank2_cells(Matroid.uniform(2, n))
        dims = {}
        for _topo, d in cells:
            dims[d] = dims.get(d, 0) + 1
        rec = sparse_paving_census(2, n)
        print(f"n={n}: cells={len(cells)}  s(2,{n})={rec.source_size}  "
              f"distinct types={rec.distinct_types}  "
              f"dims={dict(sorted(dims.items()))}")


if __name__ == "__main__":
    main()
