"""Exact rational subspaces: symbol equation systems, dimensions, projections.

Rank computation clears denominators row by row and eliminates with integer
cross-multiplication plus gcd reduction, so no rational arithmetic happens
inside the pivoting loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .matroid import Matroid
from .valuation import Valuation, combinatorial_type


class CoverInputError(ValueError):
    """The supplied block multiset is not an exact k-cover."""


def _integer_rows(coords, equations):
    """Sparse rational rows -> dense integer rows over the coord order."""
    index = {c: i for i, c in enumerate(coords)}
    out = []
    for eq in equations:
        denom = 1
        for v in eq.values():
            denom = denom * v.denominator // gcd(denom, v.denominator)
        row = [0] * len(coords)
        for c, v in eq.items():
            if c in index:
                row[index[c]] = int(v * denom)
        out.append(row)
    return out


def integer_matrix_rank(rows) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while col < ncols and rank < len(rows):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            q = rows[i][col]
            if not q:
                continue
            row = [p * a - q * b for a, b in zip(rows[i], rows[rank])]
            g = 0
            for a in row:
                g = gcd(g, a)
            rows[i] = [a // g for a in row] if g > 1 else row
        rank += 1
        col += 1
    return rank


@dataclass
class RationalSubspace:
    """Solution space of rational linear equations over an ordered coord set."""

    coords: tuple
    equations: list  # list of dict coord -> Fraction

    def __post_init__(self):
        self.coords = tuple(self.coords)
        cs = set(self.coords)
        for eq in self.equations:
            bad = set(eq) - cs
            if bad:
                raise ValueError(f"equation touches unknown coordinates {bad}")
        self._dim = None

    def dim(self) -> int:
        if self._dim is None:
            rows = _integer_rows(self.coords, self.equations)
            self._dim = len(self.coords) - integer_matrix_rank(rows)
        return self._dim

    def with_extra_equations(self, extra) -> "RationalSubspace":
        return RationalSubspace(self.coords, self.equations + list(extra))

    def zero_section_dim(self, A) -> int:
        """dim of {x in L : x_a = 0 for a in A}."""
        zero_eqs = [{a: Fraction(1)} for a in A]
        return self.with_extra_equations(zero_eqs).dim()

    def projection_dim(self, A) -> int:
        """dim(L_A) via dim(L) = dim(L_A) + dim(L^A)."""
        A = list(A)
        bad = set(A) - set(self.coords)
        if bad:
            raise ValueError(f"projection coordinates {bad} not in ambient")
        return self.dim() - self.zero_section_dim(A)

    def contains(self, vector) -> bool:
        """Membership of a coord->value map (absent coords read as 0)."""
        for eq in self.equations:
            total = Fraction(0)
            for c, coef in eq.items():
                total += coef * Fraction(vector.get(c, 0))
            if total != 0:
                return False
        return True


def solve_linear_system(equations, variables):
    """Solve a rational system given as [(coeff dict, rhs), ...].

    Returns a particular solution dict with free variables pinned to 0, or
    None if the system is inconsistent.
    """
    variables = list(variables)
    index = {v: i for i, v in enumerate(variables)}
    nvars = len(variables)
    rows = []
    for coeffs, rhs in equations:
        row = [Fraction(0)] * (nvars + 1)
        for v, c in coeffs.items():
            row[index[v]] += Fraction(c)
        row[nvars] = Fraction(rhs)
        rows.append(row)
    pivots = []
    rank = 0
    for col in range(nvars):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        rows[rank] = [x / p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, len(rows)):
        if rows[i][nvars] != 0:
            return None
    sol = {v: Fraction(0) for v in variables}
    for i, col in enumerate(pivots):
        sol[variables[col]] = rows[i][nvars]
    return sol


def subspace_from_symbols(M: Matroid, symbols) -> RationalSubspace:
    """L(Z): symbol equalities plus zero on non-bases, expressed over the
    basis coordinates (the zero-forced coordinates are eliminated up front)."""
    coords = tuple(M.sorted_bases())
    one = Fraction(1)
    equations = []
    for sym in symbols:
        sac, sbd, sad, sbc = sym.cross_sets()
        eq = {}
        for m, coef in ((sac, one), (sbd, one), (sad, -one), (sbc, -one)):
            if m in M.bases:
                eq[m] = eq.get(m, Fraction(0)) + coef
        eq = {m: v for m, v in eq.items() if v != 0}
        if eq:
            equations.append(eq)
    return RationalSubspace(coords, equations)


def cell_dim(nu: Valuation) -> int:
    """Dimension of the linear hull L([nu]) of the cell containing nu."""
    ctype = combinatorial_type(nu)
    L = subspace_from_symbols(nu.matroid, ctype.full_type)
    assert L.contains(nu.values), "valuation must lie in its own cell hull"
    return L.dim()


@dataclass(frozen=True)
class ExactCover:
    """Multiset of blocks covering each ground element exactly k times."""

    ground: frozenset
    blocks: tuple
    k: int

    def __post_init__(self):
        object.__setattr__(self, "ground", frozenset(self.ground))
        object.__setattr__(self, "blocks", tuple(frozenset(b) for b in self.blocks))
        for b in self.blocks:
            if not b:
                raise CoverInputError("empty block")
            if not b <= self.ground:
                raise CoverInputError(f"block {set(b)} leaves the ground set")
        for x in self.ground:
            count = sum(1 for b in self.blocks if x in b)
            if count != self.k:
                raise CoverInputError(
                    f"element {x!r} covered {count} times, expected {self.k}"
                )


def exact_cover_check(L: RationalSubspace, cover: ExactCover):
    """Evaluate dim(L) <= (1/k) * sum over blocks of dim(L_A), exactly."""
    if cover.ground != frozenset(L.coords):
        raise CoverInputError("cover ground set differs from ambient coordinates")
    lhs = L.dim()
    rhs = Fraction(sum(L.projection_dim(A) for A in cover.blocks), cover.k)
    return lhs, rhs, Fraction(lhs) <= rhs
