import random
from itertools import combinations

import networkx as nx
import pytest

from dkrigid.combinat import (
    combinatorial_matroid_rank,
    exists_edge_two_connected,
    hendrickson_checks,
    is_dk_rigid_combinatorial,
    is_k_connected,
    is_sparse_tight,
    matroid_rank,
    spanning_rigid_subgraph_exists,
    union_independent,
    vertex_connectivity,
)
from dkrigid.core import Graph
from dkrigid.matrices import dk_rank_target, is_generically_dk_rigid

from conftest import random_graph


def atlas(nmax):
    for h in nx.graph_atlas_g():
        if 0 < h.number_of_nodes() <= nmax:
            yield Graph.from_edges(h.number_of_nodes(), h.edges())


def brute_sparse(g, a, b):
    for size in range(2, g.n + 1):
        for sub in combinations(range(g.n), size):
            s = set(sub)
            if sum(1 for u, v in g.edges if u in s and v in s) > a * size - b:
                return False
    return True


OCTAHEDRON = Graph.from_edges(
    6, [(u, v) for u, v in combinations(range(6), 2) if {u, v} not in ({0, 5}, {1, 4}, {2, 3})]
)


def test_triangle_tight():
    v = is_sparse_tight(Graph.complete(3), 2, 3)
    assert v.answer and v.witness["tight"]


def test_k4_not_sparse():
    v = is_sparse_tight(Graph.complete(4), 2, 3)
    assert not v.answer
    bad = set(v.witness["violating_vertices"])
    assert v.witness["violating_edges"] > 2 * len(bad) - 3


def test_pebble_game_matches_brute_force():
    count = 0
    for g in atlas(6):
        v = is_sparse_tight(g, 2, 3)
        assert v.answer == brute_sparse(g, 2, 3), g
        if v.witness["tight"]:
            count += 1
        if not v.answer:
            bad = set(v.witness["violating_vertices"])
            assert sum(1 for a, b in g.edges if a in bad and b in bad) > 2 * len(bad) - 3
    assert count > 10  # the Laman graphs on <= 6 vertices are well represented


def test_forest_sparsity_and_exhaustive_path():
    rng = random.Random(2)
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 7), 0.35)
        assert is_sparse_tight(g, 1, 1).answer == nx.is_forest(_nx(g))
        v = is_sparse_tight(g, 3, 6)
        assert v.method == "exhaustive" and v.answer == brute_sparse(g, 3, 6)
    with pytest.raises(ValueError):
        is_sparse_tight(Graph.complete(11), 3, 6)


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_spanning_rigid_examples():
    tree = Graph.from_edges(5, [(0, 1), (0, 2), (2, 3), (2, 4)])
    assert spanning_rigid_subgraph_exists(tree, 1)
    assert not spanning_rigid_subgraph_exists(Graph.cycle(4), 2)
    v = spanning_rigid_subgraph_exists(OCTAHEDRON, 3)
    assert v.answer and v.method == "generic-rank"
    assert len(v.witness["basis"]) == 3 * 6 - 6


def test_dk_rigid_special_cases():
    rng = random.Random(4)
    for _ in range(25):
        g = random_graph(rng, rng.randint(3, 7), 0.4, connected=True)
        has_cycle = g.m >= g.n
        complete = g.is_complete()
        assert is_dk_rigid_combinatorial(g, 2, 1).answer == (complete or has_cycle)
        assert is_dk_rigid_combinatorial(g, 3, 2).answer == (complete or g.m >= g.n + 1)


def test_laman_plus_one_is_31_rigid():
    laman = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
    assert is_sparse_tight(laman, 2, 3).witness["tight"]
    plus_one = Graph.from_edges(5, list(laman.edges) + [(0, 4)])
    assert is_dk_rigid_combinatorial(plus_one, 3, 1)
    assert not is_dk_rigid_combinatorial(laman, 3, 1)


def test_minimal_witness_edge_count():
    rng = random.Random(8)
    for _ in range(30):
        n = rng.randint(3, 7)
        d, k = rng.choice([(2, 1), (3, 1), (3, 2), (4, 1)])
        g = random_graph(rng, n, 0.7, connected=True)
        v = is_dk_rigid_combinatorial(g, d, k)
        if v.answer and "minimal_subgraph" in v.witness:
            sub = g.edge_subgraph(v.witness["minimal_subgraph"])
            assert sub.m == dk_rank_target(n, d, k)
            assert is_generically_dk_rigid(sub, d, k)


def test_matroid_rank_examples(k4_minus_e):
    c4 = Graph.cycle(4)
    assert matroid_rank(c4, [], 2) == 0
    assert matroid_rank(c4, range(4), 1) == 3
    assert matroid_rank(k4_minus_e, range(5), 1) == 3


def test_matroid_rank_matches_combinatorial():
    rng = random.Random(12)
    for _ in range(20):
        g = random_graph(rng, rng.randint(2, 6), 0.6)
        f = [i for i in range(g.m) if rng.random() < 0.7]
        for m in (1, 2):
            assert matroid_rank(g, f, m) == combinatorial_matroid_rank(g, f, m)


def test_matroid_rank_monotone_submodular():
    g = Graph.complete(5).remove_edges([(0, 1), (2, 3)])
    subsets = [frozenset(s) for r in range(g.m + 1) for s in combinations(range(g.m), r)]
    r = {s: combinatorial_matroid_rank(g, s, 2) for s in subsets}
    rng = random.Random(1)
    for _ in range(300):
        a, b = rng.choice(subsets), rng.choice(subsets)
        assert r[a | b] + r[a & b] <= r[a] + r[b]
        if a <= b:
            assert r[a] <= r[b]
    # sampled generic rank agrees on a spot check of subsets
    for s in rng.sample(subsets, 25):
        assert matroid_rank(g, s, 2) == r[s]


def test_union_independence(k4_minus_e):
    c4 = Graph.cycle(4)
    assert union_independent(c4, range(4), 1, 1)
    assert not union_independent(k4_minus_e, range(5), 1, 1)
    for sub in combinations(range(5), 4):
        assert union_independent(k4_minus_e, sub, 1, 1)
    assert union_independent(Graph.complete(5), [0, 1, 2], 1, 3)


def test_connectivity_examples(k4_minus_e):
    v = is_k_connected(Graph.path(3), 2)
    assert not v.answer and v.witness["separator"] == [1]
    assert is_k_connected(k4_minus_e, 2)
    for n in range(3, 8):
        assert is_k_connected(Graph.cycle(n), 2)
        assert not is_k_connected(Graph.cycle(n), 3)
    disconnected = Graph.from_edges(4, [(0, 1), (2, 3)])
    v = is_k_connected(disconnected, 1)
    assert not v.answer and v.witness["separator"] == []


def test_connectivity_matches_networkx():
    rng = random.Random(99)
    for _ in range(60):
        g = random_graph(rng, rng.randint(2, 8), rng.uniform(0.2, 0.9))
        kappa, sep = vertex_connectivity(g)
        assert kappa == nx.node_connectivity(_nx(g))
        if sep is not None:
            assert len(sep) == kappa
            assert not nx.is_connected(_nx(g.remove_vertices(sep))) or g.n - kappa <= 1


def test_hendrickson_examples(k4_minus_e):
    tree = Graph.path(4)
    v = hendrickson_checks(tree, 2, 1)
    assert not v.answer and v.witness["conclusive"]
    v = hendrickson_checks(k4_minus_e, 2, 1)
    assert v.answer and not v.witness["conclusive"]
    # K4 minus any edge is still Laman, so K4 is redundantly 2-rigid
    v = hendrickson_checks(Graph.complete(4), 3, 1)
    assert v.answer
    w5 = Graph.from_edges(6, [(0, i) for i in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)])
    v = hendrickson_checks(w5, 3, 1)
    assert v.witness["conditions"] == {"3-connected": True, "redundantly-2-rigid": True}
    v = hendrickson_checks(OCTAHEDRON, 5, 1)
    assert v.witness["partial"]


def test_edge_with_two_connected_remainder(k4_minus_e):
    assert exists_edge_two_connected(k4_minus_e) == (0, 2)
    assert exists_edge_two_connected(Graph.cycle(4)) is None
    k5 = Graph.complete(5)
    e = exists_edge_two_connected(k5)
    assert e == (0, 1)
    assert all(is_k_connected(k5.remove_edges([f]), 3) for f in k5.edges)
