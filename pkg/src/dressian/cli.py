"""Command-line surface: every operation behind a subcommand with file I/O.

Output is deterministic for a fixed seed: JSON is emitted with sorted keys
and no timestamps, CSV rows come out in a fixed order, and all sampling
goes through seeded generators.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from fractions import Fraction

from .bounds import (
    BoundsReport,
    ScaleLimitError,
    bounds_report,
    lower_bound_certificate,
    perturbed_census,
    sparse_paving_census,
)
from .linear import CoverInputError, ExactCover, RationalSubspace, cell_dim, exact_cover_check
from .matroid import Matroid, MatroidInputError, NotAMatroidError, mask_to_set, set_to_mask
from .rationals import format_rational, parse_rational
from .subdivision import spread_report, subdivision_cells
from .trees import MetricTree, TreeInputError, decode_tree, enumerate_rank2_cells, tree_to_valuation
from .valuation import (
    NotAValuationError,
    Valuation,
    ValuationInputError,
    check_valuation,
    check_valuation_bruteforce,
    combinatorial_type,
    contract_valuation,
    equivalent,
    residue_matroid,
    shift,
    smooth_decompose,
    valuation_from_matroid,
)

INPUT_ERRORS = (
    MatroidInputError,
    NotAMatroidError,
    ValuationInputError,
    NotAValuationError,
    TreeInputError,
    CoverInputError,
    ScaleLimitError,
    json.JSONDecodeError,
    OSError,
    ValueError,
)


class InvariantViolation(RuntimeError):
    """A property the library guarantees failed to hold."""


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _load_matroid(path) -> Matroid:
    return Matroid.from_json_obj(_load_json(path))


def _load_valuation(path) -> Valuation:
    return Valuation.from_json_obj(_load_json(path), matroid_loader=_load_matroid)


def _load_valuation_raw(path):
    """Matroid plus value table without the validity check (for `check`)."""
    obj = _load_json(path)
    mat = obj["matroid"]
    M = _load_matroid(mat) if isinstance(mat, str) else Matroid.from_json_obj(mat)
    vals = {}
    for key, text in obj["values"].items():
        elems = tuple(int(tok) for tok in key.split(","))
        vals[set_to_mask(elems)] = parse_rational(str(text))
    return M, vals


def _parse_element_set(text):
    return [int(tok) for tok in text.split(",") if tok != ""]


def _parse_shift_vector(text, n):
    parts = [parse_rational(tok) for tok in text.split(",")]
    if len(parts) != n:
        raise ValuationInputError(f"shift vector has {len(parts)} entries, need {n}")
    return parts


def _set_key(mask):
    return ",".join(str(e) for e in mask_to_set(mask))


def _emit(args, obj, csv_rows=None, text=None):
    """Write the document in the requested format to stdout or --out."""
    if args.format == "json":
        doc = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        if csv_rows is None:
            raise ValueError("this subcommand has no CSV form")
        buf = io.StringIO()
        buf.write("quantity,observed,bound,bound_source,satisfied\n")
        for row in csv_rows:
            buf.write(",".join('"%s"' % str(v).replace('"', '""') for v in row) + "\n")
        doc = buf.getvalue()
    else:
        doc = (text if text is not None
               else json.dumps(obj, sort_keys=True, indent=2)) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(doc)
    else:
        sys.stdout.write(doc)


# ---------------------------------------------------------------------------
# subcommand bodies


def cmd_check(args):
    M, vals = _load_valuation_raw(args.valuation)
    fast = check_valuation(M, vals)
    slow = check_valuation_bruteforce(M, vals)
    if fast != slow:
        raise InvariantViolation("three-term and direct checkers disagree")
    _emit(args, {"valid": fast}, text=f"valid: {fast}")


def cmd_type(args):
    nu = _load_valuation(args.valuation)
    t = combinatorial_type(nu)
    obj = {
        "type_size": t.size,
        "z1_size": t.z1_size,
        "symbols_equal": sorted(s.as_key() for s in t.symbols_equal),
    }
    _emit(args, obj, text=f"type_size: {t.size}")


def cmd_equiv(args):
    nu = _load_valuation(args.valuation)
    mu = _load_valuation(args.other)
    eq = equivalent(nu, mu)
    _emit(args, {"equivalent": eq}, text=f"equivalent: {eq}")


def cmd_dim(args):
    nu = _load_valuation(args.valuation)
    d = cell_dim(nu)
    _emit(args, {"dim": d}, text=str(d))


def cmd_contract(args):
    nu = _load_valuation(args.valuation)
    S = _parse_element_set(args.set)
    contracted, keep = contract_valuation(nu, S)
    obj = {"valuation": contracted.to_json_obj(), "kept_elements": keep}
    _emit(args, obj)


def cmd_residue(args):
    nu = _load_valuation(args.valuation)
    w = _parse_shift_vector(args.shift, nu.matroid.n) if args.shift else None
    M0 = residue_matroid(nu, w)
    _emit(args, M0.to_json_obj())


def cmd_from_matroid(args):
    N = _load_matroid(args.matroid)
    nu = valuation_from_matroid(N)
    _emit(args, nu.to_json_obj())


def cmd_tree_decode(args):
    nu = _load_valuation(args.valuation)
    T = decode_tree(nu)
    obj = {
        "newick": T.to_newick(),
        "internal_vertices": len(T.internal_vertices()),
        "splits": sorted(
            [sorted(side) for side in sorted(sp, key=sorted)] for sp in T.splits()
        ),
    }
    _emit(args, obj, text=T.to_newick())


def cmd_tree_encode(args):
    with open(args.tree) as fh:
        T = MetricTree.from_newick(fh.read(), n=args.n)
    nu = tree_to_valuation(T, Matroid.uniform(2, T.n))
    _emit(args, nu.to_json_obj())


def cmd_rank2_census(args):
    cells = enumerate_rank2_cells(Matroid.uniform(2, args.n))
    dims = {}
    for _topo, d in cells:
        dims[d] = dims.get(d, 0) + 1
    obj = {"n": args.n, "cells": len(cells),
           "dims": {str(k): dims[k] for k in sorted(dims)}}
    _emit(args, obj, text=f"cells: {len(cells)}")


def cmd_subdivision(args):
    nu = _load_valuation(args.valuation)
    census = subdivision_cells(nu, seed=args.seed)
    obj = {
        "spread": census.spread,
        "exploration_status": census.exploration_status,
        "cells": [
            [_set_key(b) for b in cell.sorted_bases()]
            for cell in census.maximal_cells
        ],
    }
    _emit(args, obj, text=f"spread: {census.spread} ({census.exploration_status})")


def cmd_spread(args):
    nu = _load_valuation(args.valuation)
    _emit(args, spread_report(nu, seed=args.seed))


def cmd_bounds(args):
    rep = bounds_report(args.n, args.r, args.t)
    rows = [(q, "", v, s, "") for q, v, s in rep.rows()]
    _emit(args, rep.to_json_obj(), csv_rows=rows)


def cmd_lower_bound(args):
    N, c, dim = lower_bound_certificate(args.n, args.r)
    rep = bounds_report(args.n, args.r, min(3, args.r) if args.r >= 2 else 2)
    obj = {
        "n": args.n,
        "r": args.r,
        "nonbases": [_set_key(b) for b in sorted(N.nonbases())],
        "component_count": c,
        "cell_dim": dim,
        "dim_upper": str(rep.dim_upper),
    }
    rows = [
        ("cell_dim_vs_components", dim, c, "sparse paving component certificate",
         dim >= c),
        ("cell_dim_vs_dim_upper", dim, rep.dim_upper,
         "rank-3 contraction dimension bound", Fraction(dim) <= rep.dim_upper),
    ]
    _emit(args, obj, csv_rows=rows,
          text=f"c(N) = {c}, cell_dim = {dim}, dim_upper = {rep.dim_upper}")


def cmd_sp_census(args):
    if args.perturbed:
        rec = perturbed_census(args.r, args.n, samples=args.samples,
                               seed=args.seed, with_dims=args.with_dims,
                               threads=args.threads)
    else:
        rec = sparse_paving_census(args.r, args.n, with_dims=args.with_dims,
                                   threads=args.threads)
    obj = {
        "n": rec.n,
        "r": rec.r,
        "source_size": rec.source_size,
        "distinct_types": rec.distinct_types,
        "distinct_is_injective": rec.distinct_is_injective,
        "completeness": rec.completeness,
    }
    if args.with_dims:
        obj["max_cell_dim"] = rec.max_cell_dim
    _emit(args, obj, text=f"distinct types: {rec.distinct_types}")


def cmd_cover_check(args):
    sub = _load_json(args.subspace)
    coords = [tuple(c) if isinstance(c, list) else c for c in sub["coords"]]
    key_of = {str(c): c for c in coords}
    equations = [
        {key_of[k]: parse_rational(str(v)) for k, v in eq.items()}
        for eq in sub["equations"]
    ]
    L = RationalSubspace(tuple(coords), equations)
    cov = _load_json(args.cover)
    cover = ExactCover(
        ground=frozenset(key_of[str(g)] for g in cov["ground"]),
        blocks=tuple(frozenset(key_of[str(x)] for x in blk) for blk in cov["blocks"]),
        k=int(cov["k"]),
    )
    lhs, rhs, holds = exact_cover_check(L, cover)
    if not holds:
        raise InvariantViolation(
            f"cover inequality failed: {lhs} > {format_rational(rhs)}"
        )
    obj = {"lhs": lhs, "rhs": format_rational(rhs), "holds": holds}
    _emit(args, obj, text=f"{lhs} <= {format_rational(rhs)}")


def cmd_smooth(args):
    nu = _load_valuation(args.valuation)
    remainder, peels = smooth_decompose(nu)
    obj = {
        "peels": [[_set_key(mask), format_rational(lam)] for mask, lam in peels],
        "remainder": remainder.to_json_obj(),
        "remainder_is_zero": all(v == 0 for v in remainder.values.values()),
    }
    _emit(args, obj)


# ---------------------------------------------------------------------------
# argument plumbing


def _build_parser():
    p = argparse.ArgumentParser(
        prog="dressian",
        description="valuated matroids, cell machinery, and bound reports",
    )
    sub = p.add_subparsers(dest="subcommand", required=True)

    def add(name, fn, **arguments):
        sp = sub.add_parser(name)
        for flag, kw in arguments.items():
            sp.add_argument(flag, **kw)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument(
            "--threads",
            type=int,
            default=int(os.environ.get("DRESSIAN_THREADS", os.cpu_count() or 1)),
        )
        sp.add_argument("--format", choices=["json", "csv", "text"], default="json")
        sp.add_argument("--out", default=None)
        sp.set_defaults(fn=fn)
        return sp

    val = {"--valuation": {"required": True}}
    add("check", cmd_check, **val)
    add("type", cmd_type, **val)
    add("equiv", cmd_equiv, **val, **{"--other": {"required": True}})
    add("dim", cmd_dim, **val)
    add("contract", cmd_contract, **val, **{"--set": {"required": True}})
    add("residue", cmd_residue, **val, **{"--shift": {"default": None}})
    add("from-matroid", cmd_from_matroid, **{"--matroid": {"required": True}})
    add("tree-decode", cmd_tree_decode, **val)
    add("tree-encode", cmd_tree_encode,
        **{"--tree": {"required": True}, "--n": {"type": int, "default": None}})
    add("rank2-census", cmd_rank2_census, **{"--n": {"type": int, "required": True}})
    add("subdivision", cmd_subdivision, **val)
    add("spread", cmd_spread, **val)
    add("bounds", cmd_bounds,
        **{"--n": {"type": int, "required": True},
           "--r": {"type": int, "required": True},
           "--t": {"type": int, "default": 3}})
    add("lower-bound", cmd_lower_bound,
        **{"--n": {"type": int, "required": True},
           "--r": {"type": int, "required": True}})
    add("sp-census", cmd_sp_census,
        **{"--n": {"type": int, "required": True},
           "--r": {"type": int, "required": True},
           "--with-dims": {"action": "store_true"},
           "--perturbed": {"action": "store_true"},
           "--samples": {"type": int, "default": 20}})
    add("cover-check", cmd_cover_check,
        **{"--subspace": {"required": True}, "--cover": {"required": True}})
    add("smooth", cmd_smooth, **val)
    return p


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        args.fn(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
