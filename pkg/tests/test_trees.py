import random
from fractions import Fraction

import pytest

from dressian import (
    Matroid,
    MetricTree,
    TreeInputError,
    cell_dim,
    decode_tree,
    enumerate_rank2_cells,
    equivalent,
    parallel_classes,
    set_to_mask,
    shift,
    tree_to_valuation,
    valuation_from_matroid,
)
from helpers import (
    N2,
    N3,
    random_shift_vector,
    random_tree_metric_valuation,
    rank2_nonuniform,
)


# ---------------------------------------------------------------------------
# Independent enumeration oracle: every tree on n labeled pendant leaves with
# all internal degrees >= 3, built by leaf insertion.  Removing the last leaf
# (and suppressing a degree-2 vertex) inverts the insertion, so each tree is
# produced exactly once and no deduplication is needed.


def oracle_trees(n):
    assert n >= 3
    star = {0: {n}, 1: {n}, 2: {n}, n: {0, 1, 2}}
    trees = [(star, n + 1)]
    for leaf in range(3, n):
        nxt = []
        for adj, fresh in trees:
            internals = [v for v in adj if v >= n]
            edges = {frozenset((u, v)) for u in adj for v in adj[u]}
            for v in internals:
                a2 = {x: set(ys) for x, ys in adj.items()}
                a2[leaf] = {v}
                a2[v].add(leaf)
                nxt.append((a2, fresh))
            for e in edges:
                u, v = sorted(e)
                a2 = {x: set(ys) for x, ys in adj.items()}
                mid = fresh
                a2[u].discard(v)
                a2[v].discard(u)
                a2[mid] = {u, v, leaf}
                a2[u].add(mid)
                a2[v].add(mid)
                a2[leaf] = {mid}
                nxt.append((a2, fresh + 1))
        trees = nxt
    return trees


def oracle_splits(adj, n):
    """Internal-edge bipartitions of the leaf set, both sides >= 2."""
    out = set()
    for u in adj:
        for v in adj[u]:
            if u >= n and v > u:
                side = set()
                stack = [(v, u)]
                while stack:
                    x, parent = stack.pop()
                    if x < n:
                        side.add(x)
                    for y in adj[x]:
                        if y != parent:
                            stack.append((y, x))
                if 2 <= len(side) <= n - 2:
                    out.add(frozenset({frozenset(side), frozenset(range(n)) - frozenset(side)}))
    return frozenset(out)


def test_oracle_counts():
    assert len(oracle_trees(4)) == 4
    assert len(oracle_trees(5)) == 26
    assert len(oracle_trees(6)) == 236


def test_rank2_census_matches_oracle():
    for n, expected in [(4, 4), (5, 26), (6, 236)]:
        cells = enumerate_rank2_cells(Matroid.uniform(2, n))
        assert len(cells) == expected
        oracle = {oracle_splits(adj, n) for adj, _ in oracle_trees(n)}
        assert len(oracle) == expected  # insertion really is bijective
        ours = {
            frozenset(sp for sp in topo.splits) for topo, _dim in cells
        }
        assert ours == oracle


def test_cell_dims_in_census():
    for n in (4, 5):
        for topo, dim in enumerate_rank2_cells(Matroid.uniform(2, n)):
            assert dim == n + len(topo.splits)
            assert dim <= 2 * n - 3  # n + t - 3 with t = n singleton classes


def test_census_count_bound():
    for n in (4, 5, 6):
        t = n
        assert len(enumerate_rank2_cells(Matroid.uniform(2, n))) <= 2**t * t**n


def test_parallel_classes():
    assert sorted(map(sorted, parallel_classes(N3))) == [[0, 1], [2, 3], [4]]
    assert sorted(map(sorted, parallel_classes(Matroid.uniform(2, 4)))) == [
        [0], [1], [2], [3]
    ]


def test_nonuniform_census_excludes_class_pendant_splits():
    M = rank2_nonuniform(4, [(0, 1)])
    cells = enumerate_rank2_cells(M)
    assert len(cells) == 1
    topo, dim = cells[0]
    assert topo.splits == frozenset()
    assert dim == 4
    # three classes: no side can hold two of them, so again a single cell
    assert len(enumerate_rank2_cells(N3)) == 1


def test_decode_encode_roundtrip_random():
    rnd = random.Random(71)
    for _ in range(40):
        n = rnd.choice([4, 5, 6])
        nu = random_tree_metric_valuation(n, rnd)
        nu = shift(nu, random_shift_vector(n, rnd))
        T = decode_tree(nu)
        back = tree_to_valuation(T, nu.matroid)
        assert back == nu


def test_decode_matroid_valuation():
    T = decode_tree(valuation_from_matroid(N3))
    assert len(T.internal_vertices()) == 3
    assert frozenset({frozenset({0, 1}), frozenset({2, 3, 4})}) in T.splits()


def test_tree_valuation_rejects_bad_nonbases():
    # a non-basis pair whose elements do not share a tree neighbor
    M = rank2_nonuniform(5, [(0, 1)])
    hit = False
    for seed in range(20):
        T = decode_tree(random_tree_metric_valuation(5, random.Random(seed)))
        if len(T.path(0, 1)) > 3:
            with pytest.raises(TreeInputError):
                tree_to_valuation(T, M)
            hit = True
    assert hit


def test_decoded_topology_classifies_equivalence():
    rnd = random.Random(77)
    pairs = 0
    for _ in range(60):
        n = rnd.choice([4, 5])
        a = random_tree_metric_valuation(n, rnd)
        b = random_tree_metric_valuation(n, rnd)
        same_topo = decode_tree(a).topology() == decode_tree(b).topology()
        assert same_topo == equivalent(a, b)
        pairs += 1
    assert pairs == 60


def test_topologies_cover_all_cells():
    # sampling the encoder over every oracle tree hits every enumerated cell
    rnd = random.Random(83)
    n = 5
    M = Matroid.uniform(2, n)
    seen = set()
    for adj, _ in oracle_trees(n):
        lengths = {}
        for u in adj:
            for v in adj[u]:
                if u < v:
                    lengths[frozenset((u, v))] = -Fraction(rnd.randint(1, 5))
        T = MetricTree(n, {u: frozenset(vs) for u, vs in adj.items()}, lengths)
        nu = tree_to_valuation(T, M)
        seen.add(decode_tree(nu).topology())
    cells = enumerate_rank2_cells(M)
    assert len(seen) == len(cells) == 26


def test_cell_dim_equals_tree_edge_count():
    rnd = random.Random(89)
    for _ in range(25):
        n = rnd.choice([4, 5, 6])
        nu = random_tree_metric_valuation(n, rnd)
        T = decode_tree(nu)
        assert cell_dim(nu) == len(T.lengths)


def test_newick_roundtrip():
    rnd = random.Random(97)
    for _ in range(20):
        T = decode_tree(random_tree_metric_valuation(5, rnd))
        back = MetricTree.from_newick(T.to_newick(), n=5)
        assert back.topology() == T.topology()
        for i in range(5):
            for j in range(i + 1, 5):
                assert back.path_length(i, j) == T.path_length(i, j)


def test_four_point_condition_on_decoded_metric():
    # -nu is a tree metric: the two largest of the three pairings coincide
    rnd = random.Random(101)
    for _ in range(20):
        nu = random_tree_metric_valuation(6, rnd)
        for quad in [(0, 1, 2, 3), (1, 2, 4, 5), (0, 3, 4, 5)]:
            a, b, c, d = quad
            d_ = lambda i, j: -nu.values[set_to_mask((i, j))]
            sums = sorted([d_(a, b) + d_(c, d), d_(a, c) + d_(b, d), d_(a, d) + d_(b, c)])
            assert sums[1] == sums[2]
