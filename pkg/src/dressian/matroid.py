"""Matroids as basis families on ground set {0..n-1}.

Bases are stored as n-bit masks with exactly r bits set.  The canonical
ordering of bases everywhere (serialization, iteration) is colexicographic,
which for bitmask encodings is plain integer order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations


class MatroidInputError(ValueError):
    """Malformed input (wrong subset size, out-of-range element, ...)."""


class NotAMatroidError(ValueError):
    """A candidate basis family violates the exchange axiom."""


def set_to_mask(elems) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def mask_to_set(mask: int) -> tuple[int, ...]:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def r_subset_masks(n: int, r: int) -> list[int]:
    """All r-subsets of {0..n-1} as masks, in colex (= numeric) order."""
    return sorted(set_to_mask(c) for c in combinations(range(n), r))


def _check_exchange(n: int, r: int, bases: frozenset[int]) -> bool:
    """Exchange axiom (B), quantified directly over all pairs."""
    blist = list(bases)
    for b1 in blist:
        for b2 in blist:
            diff = b1 & ~b2
            e = 0
            d = diff
            while d:
                if d & 1:
                    ebit = 1 << e
                    ok = False
                    f = 0
                    fd = b2 & ~b1
                    while fd:
                        if fd & 1:
                            fbit = 1 << f
                            if (b1 ^ ebit | fbit) in bases and (b2 ^ fbit | ebit) in bases:
                                ok = True
                                break
                        fd >>= 1
                        f += 1
                    if not ok:
                        return False
                d >>= 1
                e += 1
    return True


def is_matroid(n: int, r: int, candidate_bases) -> bool:
    """True iff the candidate family satisfies (B).

    Raises MatroidInputError on malformed input; a well-formed family that
    merely fails the axiom returns False.
    """
    bases = _normalize_bases(n, r, candidate_bases)
    return _check_exchange(n, r, bases)


def _normalize_bases(n: int, r: int, candidate_bases) -> frozenset[int]:
    if n < 0 or not 0 <= r <= n:
        raise MatroidInputError(f"bad parameters n={n}, r={r}")
    out = set()
    for b in candidate_bases:
        m = b if isinstance(b, int) else set_to_mask(b)
        if m < 0 or m >> n:
            raise MatroidInputError(f"basis {b!r} out of range for n={n}")
        if m.bit_count() != r:
            raise MatroidInputError(f"basis {b!r} does not have {r} elements")
        out.add(m)
    if not out:
        raise MatroidInputError("empty basis family")
    return frozenset(out)


@dataclass(frozen=True)
class Matroid:
    """A matroid (E, B) with E = {0..n-1}; immutable after construction."""

    n: int
    r: int
    bases: frozenset[int]

    def __post_init__(self):
        bases = _normalize_bases(self.n, self.r, self.bases)
        object.__setattr__(self, "bases", bases)
        if not _check_exchange(self.n, self.r, bases):
            raise NotAMatroidError("basis family violates the exchange axiom")

    # -- queries ----------------------------------------------------------

    def sorted_bases(self) -> list[int]:
        return sorted(self.bases)

    def nonbases(self) -> list[int]:
        return [m for m in r_subset_masks(self.n, self.r) if m not in self.bases]

    def rank_of(self, X) -> int:
        """Rank of a subset: max |X ∩ B| over bases B."""
        xm = X if isinstance(X, int) else set_to_mask(X)
        if xm < 0 or xm >> self.n:
            raise MatroidInputError(f"subset {X!r} out of range")
        return max((xm & b).bit_count() for b in self.bases)

    def is_independent(self, X) -> bool:
        xm = X if isinstance(X, int) else set_to_mask(X)
        return self.rank_of(xm) == xm.bit_count()

    def is_basis(self, X) -> bool:
        xm = X if isinstance(X, int) else set_to_mask(X)
        return xm in self.bases

    def is_uniform(self) -> bool:
        from math import comb

        return len(self.bases) == comb(self.n, self.r)

    # -- constructions ----------------------------------------------------

    def dual(self) -> "Matroid":
        full = (1 << self.n) - 1
        return Matroid(self.n, self.n - self.r, frozenset(full ^ b for b in self.bases))

    def minor(self, contract_set=(), delete_set=()) -> tuple["Matroid", list[int]]:
        """M / contract_set \\ delete_set, relabeled to a dense ground set.

        Returns (minor, element_map) where element_map[i] is the original
        name of new element i.
        """
        cm = contract_set if isinstance(contract_set, int) else set_to_mask(contract_set)
        dm = delete_set if isinstance(delete_set, int) else set_to_mask(delete_set)
        if cm & dm:
            raise MatroidInputError("contract and delete sets intersect")
        if (cm | dm) >> self.n:
            raise MatroidInputError("contract/delete elements out of range")
        if not self.is_independent(cm):
            raise MatroidInputError("contract set is dependent")
        # contraction: bases containing cm, minus cm
        contracted = [b ^ cm for b in self.bases if b & cm == cm]
        # deletion: bases of M\D are the maximal-size sets B\D
        best = max((b & ~dm).bit_count() for b in contracted)
        new_bases = {b & ~dm for b in contracted if (b & ~dm).bit_count() == best}
        keep = [e for e in range(self.n) if not ((cm | dm) >> e) & 1]
        old_to_new = {old: new for new, old in enumerate(keep)}
        relabeled = set()
        for b in new_bases:
            relabeled.add(set_to_mask(old_to_new[e] for e in mask_to_set(b)))
        if not relabeled:
            raise MatroidInputError("minor has empty basis family")
        return Matroid(len(keep), best, frozenset(relabeled)), keep

    # -- sparse paving / Johnson graph ------------------------------------

    def is_sparse_paving(self) -> bool:
        """Non-bases form a stable set of the Johnson graph J(r, n)."""
        nb = self.nonbases()
        nbset = set(nb)
        for m in nb:
            for other in johnson_neighbors(self.n, m):
                if other in nbset:
                    return False
        return True

    def johnson_components(self) -> "JohnsonComponentReport":
        """Connected components of the subgraph of J(r,n) induced on non-bases."""
        nb = self.nonbases()
        nbset = set(nb)
        seen = set()
        comps = []
        for start in nb:
            if start in seen:
                continue
            comp = []
            stack = [start]
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in johnson_neighbors(self.n, v):
                    if u in nbset and u not in seen:
                        seen.add(u)
                        stack.append(u)
            comps.append(sorted(comp))
        comps.sort()
        return JohnsonComponentReport(
            nonbasis_count=len(nb), component_count=len(comps), components=comps
        )

    # -- serialization ----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "bases": [list(mask_to_set(b)) for b in self.sorted_bases()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Matroid":
        try:
            n, r, bases = obj["n"], obj["r"], obj["bases"]
        except (KeyError, TypeError) as exc:
            raise MatroidInputError(f"bad matroid document: {exc}")
        return cls(n, r, frozenset(set_to_mask(b) for b in bases))

    @classmethod
    def from_json(cls, text: str) -> "Matroid":
        return cls.from_json_obj(json.loads(text))

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "Matroid":
        """One basis per line, elements space-separated."""
        bases = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            bases.append(tuple(int(tok) for tok in line.split()))
        if not bases:
            raise MatroidInputError("no bases in text input")
        r = len(bases[0])
        if n is None:
            n = 1 + max(e for b in bases for e in b)
        return cls(n, r, frozenset(set_to_mask(b) for b in bases))

    @classmethod
    def uniform(cls, r: int, n: int) -> "Matroid":
        return cls(n, r, frozenset(r_subset_masks(n, r)))

    def __repr__(self):
        return f"Matroid(n={self.n}, r={self.r}, |bases|={len(self.bases)})"


@dataclass(frozen=True)
class JohnsonComponentReport:
    nonbasis_count: int
    component_count: int
    components: list = field(default_factory=list)


def johnson_neighbors(n: int, mask: int):
    """Vertices of J(r, n) at distance 1 from mask (|X \\ Y| = 1)."""
    elems = mask_to_set(mask)
    for e in elems:
        rest = mask ^ (1 << e)
        for f in range(n):
            if not (mask >> f) & 1:
                yield rest | (1 << f)


def modular_stable_matroid(n: int, r: int, k: int) -> Matroid:
    """Sparse paving matroid whose non-bases are the r-sets with sum ≡ k (mod n).

    Johnson-adjacent r-sets have different sums mod n, so the chosen class is
    a stable set and the complement family is a matroid.
    """
    if not 0 < r < n:
        raise MatroidInputError(f"need 0 < r < n, got r={r}, n={n}")
    if not 0 <= k < n:
        raise MatroidInputError(f"need 0 <= k < n, got k={k}")
    bases = [
        m for m in r_subset_masks(n, r) if sum(mask_to_set(m)) % n != k
    ]
    if not bases:
        raise MatroidInputError(f"modular class (n={n}, r={r}, k={k}) leaves no bases")
    return Matroid(n, r, frozenset(bases))
