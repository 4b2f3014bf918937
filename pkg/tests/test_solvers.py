from fractions import Fraction
from itertools import product

import pytest

from widthlab.branchdec import caterpillar_decomposition, evaluate, exact_width
from widthlab.errors import UsageError
from widthlab.graphs import Graph, build_named
from widthlab.solvers import (ListAssignment, WeightedInstance,
                              list_colouring_oracle, mwis_mim_dp, mwis_oracle,
                              simwidth_oracle, verify_colouring,
                              verify_independent)

from conftest import random_graph


def oracle_mwis_enumerate(inst: WeightedInstance) -> Fraction:
    """Full 2^n enumeration."""
    g = inst.graph
    best = Fraction(0)
    for mask in range(1 << g.n):
        verts = [v for v in range(g.n) if (mask >> v) & 1]
        if verify_independent(g, verts):
            w = sum((inst.weights[v] for v in verts), Fraction(0))
            best = max(best, w)
    return best


def random_weights(rng, n):
    return tuple(Fraction(rng.randrange(0, 50), rng.randrange(1, 9))
                 for _ in range(n))


def random_bd(rng, g):
    """Random leaf-insertion tree, built through the public witness path."""
    from widthlab.branchdec import _rebuild_witness
    choices = [rng.randrange(2 * d + 1) for d in range(g.n - 2)]
    return _rebuild_witness(g, choices)


def test_mwis_examples():
    c5 = WeightedInstance.uniform(build_named("C", [5]))
    assert mwis_oracle(c5).weight == 2
    p4 = WeightedInstance(build_named("P", [4]),
                          tuple(Fraction(x) for x in (1, 5, 5, 1)))
    assert mwis_oracle(p4).weight == 6
    empty = WeightedInstance(Graph.from_edges(4, []),
                             tuple(Fraction(x) for x in (1, 2, 3, 4)))
    assert mwis_oracle(empty).weight == 10


def test_mwis_certificates(rng):
    for _ in range(25):
        g = random_graph(rng, rng.randrange(1, 10), rng.randrange(10, 90))
        inst = WeightedInstance(g, random_weights(rng, g.n))
        res = mwis_oracle(inst)
        assert verify_independent(g, res.vertices)
        assert sum((inst.weights[v] for v in res.vertices), Fraction(0)) == res.weight
        assert res.weight == oracle_mwis_enumerate(inst)


def test_mwis_rejects_negative():
    with pytest.raises(UsageError):
        WeightedInstance(build_named("K", [2]), (Fraction(-1), Fraction(1)))


def test_dp_equals_oracle_random(rng):
    for _ in range(60):
        n = rng.randrange(2, 9)
        g = random_graph(rng, n, rng.randrange(10, 90))
        inst = WeightedInstance(g, random_weights(rng, n))
        bd = random_bd(rng, g)
        res, stats = mwis_mim_dp(inst, bd)
        assert res.weight == mwis_oracle(inst).weight, (g.edges,)
        assert verify_independent(g, res.vertices)
        assert sum((inst.weights[v] for v in res.vertices), Fraction(0)) == res.weight


def test_dp_single_vertex():
    g = Graph.from_edges(1, [])
    inst = WeightedInstance(g, (Fraction(7, 2),))
    _, bd = exact_width(g, "mim")
    res, _ = mwis_mim_dp(inst, bd)
    assert res.weight == Fraction(7, 2)


def test_dp_table_sizes_k33():
    g = build_named("Kst", [3, 3])
    w, bd = exact_width(g, "mim")
    assert w == 1
    inst = WeightedInstance.uniform(g)
    res, stats = mwis_mim_dp(inst, bd)
    assert res.weight == 3
    # n^w + 1 sanity contract for the supplied width
    assert stats.max_table <= g.n ** evaluate(bd).mimw + 1


def test_dp_table_size_contract(rng):
    for _ in range(20):
        n = rng.randrange(2, 9)
        g = random_graph(rng, n, rng.randrange(20, 80))
        inst = WeightedInstance.uniform(g)
        bd = random_bd(rng, g)
        w = evaluate(bd).mimw
        _, stats = mwis_mim_dp(inst, bd)
        assert stats.max_table <= n ** w + 1, (g.edges, w, stats.max_table)


def test_list_colouring_examples():
    k3 = build_named("K", [3])
    forced = ListAssignment(3, (frozenset({1}), frozenset({2}), frozenset({3})))
    assert list_colouring_oracle(k3, forced) == (1, 2, 3)
    clash = ListAssignment(2, (frozenset({1}), frozenset({1}), frozenset({1, 2})))
    assert list_colouring_oracle(k3, clash) is None


def oracle_list_colouring(g, assignment):
    for combo in product(*[sorted(l) for l in assignment.lists]):
        if all(combo[u] != combo[v] for u, v in g.edges):
            return combo
    return None


def test_list_colouring_oracle_equivalence(rng):
    for _ in range(40):
        n = rng.randrange(1, 8)
        g = random_graph(rng, n, rng.randrange(20, 90))
        k = rng.randrange(1, 5)
        lists = tuple(frozenset(c for c in range(1, k + 1) if rng.randrange(3))
                      or frozenset({rng.randrange(1, k + 1)}) for _ in range(n))
        la = ListAssignment(k, lists)
        got = list_colouring_oracle(g, la)
        want = oracle_list_colouring(g, la)
        assert (got is None) == (want is None)
        if got is not None:
            assert verify_colouring(g, la, got)


def test_list_assignment_validation():
    with pytest.raises(UsageError):
        ListAssignment(2, (frozenset({3}),))


def test_simwidth_oracle():
    assert simwidth_oracle(Graph.from_edges(4, [])) == 0
    for n in range(2, 7):
        assert simwidth_oracle(build_named("K", [n])) == 1
