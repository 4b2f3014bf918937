from fractions import Fraction

import pytest

from widthlab.branchdec import caterpillar_decomposition, evaluate, exact_width
from widthlab.errors import UsageError
from widthlab.graphs import Graph, build_named, disjoint_union
from widthlab.hgraph import (brute_force_packing, build_hgraph, solve_packing,
                             transfer_decomposition, verify_packing)
from widthlab.smallgraphs import enumerate_graphs

from conftest import random_graph

P1 = build_named("K", [1])
P2 = build_named("P", [2])
P3 = build_named("P", [3])
K3 = build_named("K", [3])


def test_hgraph_of_k1_patterns_is_host():
    # singleton occurrences share nothing; adjacency means a host edge
    for g in (build_named("P", [4]), build_named("C", [5])):
        hg = build_hgraph(g, [P1])
        assert hg.hgraph.n == g.n
        assert hg.hgraph.edges == g.edges


def test_hgraph_p2_in_p4():
    hg = build_hgraph(build_named("P", [4]), [P2])
    assert hg.hgraph.n == 3
    # consecutive edges share a vertex; the end edges are joined by the
    # middle edge, so the occurrence graph is the triangle
    assert hg.hgraph.m == 3


def test_hgraph_p3_in_p3():
    hg = build_hgraph(P3, [P3])
    assert hg.hgraph.n == 1 and hg.hgraph.m == 0


def test_hgraph_p3_in_triangle_counts_edge_subsets():
    # three distinct 2-edge subsets of the triangle host the path shape
    hg = build_hgraph(K3, [P3])
    assert hg.hgraph.n == 3
    assert hg.hgraph.m == 3


def test_hgraph_rejects_bad_patterns():
    g = build_named("P", [3])
    with pytest.raises(UsageError):
        build_hgraph(g, [disjoint_union(P1, P1)])
    with pytest.raises(UsageError):
        build_hgraph(g, [build_named("P", [5])], cap=4)


def test_anchor_groups_are_cliques(rng):
    for _ in range(15):
        g = random_graph(rng, rng.randrange(2, 7), rng.randrange(20, 90))
        hg = build_hgraph(g, [P2, P3])
        for anchor, group in hg.index.groups().items():
            for i in range(len(group)):
                assert hg.index.occurrences[group[i]].anchor == anchor
                for j in range(i + 1, len(group)):
                    assert hg.hgraph.has_edge(group[i], group[j])


def test_transfer_preserves_simw_spotchecks(rng):
    for _ in range(12):
        g = random_graph(rng, rng.randrange(2, 7), rng.randrange(25, 90))
        hg = build_hgraph(g, [P2])
        if hg.hgraph.n <= 1:
            continue
        w, bd = exact_width(g, "sim")
        tbd = transfer_decomposition(g, bd, hg)
        tbd.validate()
        assert evaluate(tbd).simw <= evaluate(bd).simw


def test_transfer_k1_reproduces_host_width(rng):
    for _ in range(8):
        g = random_graph(rng, rng.randrange(2, 7), 50)
        hg = build_hgraph(g, [P1])
        w, bd = exact_width(g, "sim")
        tbd = transfer_decomposition(g, bd, hg)
        assert evaluate(tbd).simw <= w


def test_transfer_trims_empty_leaves():
    # pattern P3 in P4: occurrences anchored at 0 and 1 only; leaves for
    # vertices 2,3 must vanish from the transferred tree
    g = build_named("P", [4])
    hg = build_hgraph(g, [P3])
    assert hg.hgraph.n == 2
    bd = caterpillar_decomposition(g, range(4))
    tbd = transfer_decomposition(g, bd, hg)
    tbd.validate()
    assert set(tbd.vertex_of_leaf.values()) == {0, 1}


def test_transfer_rejects_tiny_hgraph():
    g = build_named("P", [3])
    hg = build_hgraph(g, [P3])
    bd = caterpillar_decomposition(g, range(3))
    with pytest.raises(UsageError):
        transfer_decomposition(g, bd, hg)


def test_packing_examples():
    packing, _ = solve_packing(build_named("P", [4]), [P2])
    assert packing.weight == 1  # induced matching number of P4
    packing, _ = solve_packing(disjoint_union(P2, P2), [P2])
    assert packing.weight == 2
    packing, _ = solve_packing(build_named("P", [7]), [P3])
    assert packing.weight == brute_force_packing(build_named("P", [7]), [P3])


def test_packing_matches_bruteforce_random(rng):
    for _ in range(25):
        g = random_graph(rng, rng.randrange(1, 8), rng.randrange(15, 90))
        for pats in ([P2], [P3], [P2, P3]):
            hg = build_hgraph(g, pats)
            weights = {i: Fraction(rng.randrange(1, 30), rng.randrange(1, 7))
                       for i in range(hg.hgraph.n)}
            packing, hg2 = solve_packing(g, pats, weights, hg=hg)
            assert packing.weight == brute_force_packing(g, pats, weights, hg=hg)
            assert verify_packing(g, hg2, packing)


def test_packing_through_dp_route(rng):
    for _ in range(8):
        g = random_graph(rng, rng.randrange(2, 6), rng.randrange(30, 80))
        hg = build_hgraph(g, [P2])
        if hg.hgraph.n < 2:
            continue
        _, hbd = exact_width(hg.hgraph, "mim", cap=9) if hg.hgraph.n <= 9 else (None, None)
        if hbd is None:
            continue
        packing, _ = solve_packing(g, [P2], hg=hg, bd_of_hgraph=hbd)
        assert packing.weight == brute_force_packing(g, [P2], hg=hg)


def test_packing_missing_weight_rejected():
    with pytest.raises(UsageError):
        solve_packing(build_named("P", [4]), [P2], weights={0: Fraction(1)})
