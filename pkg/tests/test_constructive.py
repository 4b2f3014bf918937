import pytest

from widthlab.branchdec import evaluate, exact_width
from widthlab.constructive import (CertifiedDecomposition, Partition33,
                                   almost_complete, certify, decompose_3p1,
                                   decompose_4p1, first_independent_triple,
                                   first_nonadjacent_pair,
                                   partition_around_pair,
                                   partition_around_triple, ramsey)
from widthlab.errors import NotFreeError, UsageError
from widthlab.graphs import Graph, build_named, complement
from widthlab.patterns import co_biclique_universal, edgeless, is_free

from conftest import random_graph
from instgen import instances_3p1, instances_4p1


# --- Ramsey -------------------------------------------------------------

def test_ramsey_values():
    assert ramsey(3, 3).value == 6
    assert ramsey(3, 3).provenance == "exact-table"
    assert ramsey(2, 7).value == 7
    assert ramsey(1, 9).value == 1
    r34 = ramsey(3, 4)
    assert r34.value == 9 and r34.value <= 10  # binomial bound C(5,2)=10
    assert ramsey(4, 4).value == 18


def test_ramsey_symmetry_and_bound():
    from math import comb
    for r in range(1, 7):
        for s in range(1, 7):
            a, b = ramsey(r, s), ramsey(s, r)
            assert a.value == b.value
            assert a.value <= comb(r + s - 2, r - 1)


def test_ramsey_beyond_table_flagged():
    rb = ramsey(5, 5)
    assert rb.provenance == "binomial-upper"
    from math import comb
    assert rb.value == comb(8, 4)


def test_ramsey_rejects_zero():
    with pytest.raises(UsageError):
        ramsey(0, 3)


# --- partitions ----------------------------------------------------------

def naive_partition33(g, v_a, v_b):
    s = {"a": set(), "b": set(), "ab": set()}
    for v in range(g.n):
        if v in (v_a, v_b):
            continue
        key = ("a" if g.has_edge(v, v_a) else "") + ("b" if g.has_edge(v, v_b) else "")
        s[key].add(v)
    return s


def test_partition33_matches_naive(rng):
    for _ in range(30):
        g = random_graph(rng, rng.randrange(3, 9), 60)
        pair = first_nonadjacent_pair(g)
        if pair is None:
            continue
        try:
            part = partition_around_pair(g, *pair)
        except NotFreeError:
            continue
        naive = naive_partition33(g, *pair)
        assert set(part.s_a) == naive["a"]
        assert set(part.s_b) == naive["b"]
        assert set(part.s_ab) == naive["ab"]
        assert part.s_z == frozenset(pair)


def test_partition42_private_neighbours(rng):
    for _ in range(40):
        g = random_graph(rng, rng.randrange(4, 10), 55)
        triple = first_independent_triple(g)
        if triple is None:
            continue
        try:
            part = partition_around_triple(g, *triple)
        except NotFreeError:
            continue
        pivots = dict(zip("abc", triple))
        seen = set(triple)
        for key, members in part.classes:
            for v in members:
                assert v not in seen
                seen.add(v)
                for ch in "abc":
                    assert g.has_edge(v, pivots[ch]) == (ch in key)
        assert seen == set(range(g.n))


def test_partition42_star_classes(rng):
    for _ in range(30):
        g = random_graph(rng, 9, 50)
        triple = first_independent_triple(g)
        if triple is None:
            continue
        try:
            part = partition_around_triple(g, *triple)
        except NotFreeError:
            continue
        for ykey in ("ab", "ac", "bc"):
            x = (set("abc") - set(ykey)).pop()
            sx = part.cls(x)
            for v in part.cls(ykey):
                bad = len([u for u in sx if g.has_edge(u, v)]) >= 2
                assert (v in part.star_of(ykey)) == bad


# --- almost_complete ------------------------------------------------------

def naive_almost_complete(g, a_side, b_side, threshold):
    bad = 0
    for u in a_side:
        non = 0
        for v in b_side:
            if not g.has_edge(u, v):
                non += 1
        if non >= threshold:
            bad += 1
    return bad <= 2


def test_almost_complete_cases(rng):
    k66 = build_named("Kst", [6, 6])
    left, right = set(range(6)), set(range(6, 12))
    assert almost_complete(k66, left, right, 1)
    empty = Graph.from_edges(9, [])
    assert not almost_complete(empty, {0, 1, 2}, {3, 4, 5, 6}, 4)
    for _ in range(25):
        g = random_graph(rng, 10, 50)
        verts = list(range(10))
        rng.shuffle(verts)
        a, b = set(verts[:4]), set(verts[4:9])
        thr = rng.randrange(1, 5)
        assert almost_complete(g, a, b, thr) == naive_almost_complete(g, a, b, thr)
    with pytest.raises(UsageError):
        almost_complete(k66, {0, 1}, {1, 2}, 2)


# --- decompose_3p1 ---------------------------------------------------------

def test_3p1_complete_graph():
    res = decompose_3p1(build_named("K", [5]), 4)
    assert res.case == "complete"
    rep = certify(res)
    assert rep.mimw == 1
    assert rep.certificate == 5 * 9 + 8 * 4 + 46 == 123


def test_3p1_c4_good_case():
    res = decompose_3p1(build_named("C", [4]), 4)
    assert res.case == "good"
    rep = certify(res)
    assert rep.mimw <= 2 < rep.certificate


def test_3p1_rejects_non_free():
    g = Graph.from_edges(3, [])  # 3P1 itself
    with pytest.raises(NotFreeError) as err:
        decompose_3p1(g, 4)
    assert err.value.embedding is not None


def test_3p1_t_validation():
    with pytest.raises(UsageError):
        decompose_3p1(build_named("K", [3]), 3)


def test_3p1_corpus_certifies():
    corpus = instances_3p1(count=40, max_n=16)
    cases = set()
    for g in corpus:
        res = decompose_3p1(g, 4, verify_freeness=False)
        cases.add(res.case)
        rep = certify(res)
        assert rep.mimw < rep.certificate
        res.bd.validate()
    assert {"good", "bad", "complete"} <= cases


def test_3p1_bad_case_reachable():
    # complement of C7 is 3P1-free; pick one with a high-degree cut vertex,
    # or construct directly: K_{3,3} plus pivots gives S_a fully joined to S_b
    g = complement(build_named("C", [7]))
    res = decompose_3p1(g, 4, verify_freeness=False)
    rep = certify(res)
    assert rep.mimw < rep.certificate


def test_3p1_good_case_width_dominates_exact():
    for g in instances_3p1(count=12, max_n=8):
        if g.n < 2 or g.n > 8:
            continue
        res = decompose_3p1(g, 4, verify_freeness=False)
        w, _ = exact_width(g, "mim")
        assert evaluate(res.bd).mimw >= w


# --- decompose_4p1 ---------------------------------------------------------

def test_4p1_delegates_without_triple():
    res = decompose_4p1(build_named("K", [6]), 4)
    assert res.case == "delegate"
    rep = certify(res)
    assert rep.mimw == 1
    assert rep.certificate == 43 * 18 + 24 * 4 + 214 == 1084


def test_4p1_k222():
    res = decompose_4p1(build_named("Kpartite", [2, 2, 2]), 4)
    rep = certify(res)
    assert rep.mimw < rep.certificate


def test_4p1_main_case_runs():
    corpus = instances_4p1(count=40, max_n=14)
    cases = set()
    for g in corpus:
        res = decompose_4p1(g, 4, verify_freeness=False)
        cases.add(res.case)
        rep = certify(res)
        assert rep.mimw < rep.certificate
        res.bd.validate()
    assert "main" in cases and "delegate" in cases


def test_4p1_rejects_non_free():
    with pytest.raises(NotFreeError):
        decompose_4p1(Graph.from_edges(4, []), 4)
    # co(K_{2,4}+P1) itself must be rejected by the second pattern
    from widthlab.patterns import realize
    bad = realize(co_biclique_universal(2, 4))
    with pytest.raises(NotFreeError):
        decompose_4p1(bad, 4)


def test_4p1_g1_degree_assertion_reachable():
    # on accepted inputs the degree bound holds; sanity: corpora above ran
    # through it. Here, a graph failing freeness must not reach that point.
    with pytest.raises(NotFreeError):
        decompose_4p1(Graph.from_edges(5, []), 4)


def test_instance_generators_are_verified():
    for g in instances_3p1(count=8, max_n=10):
        assert is_free(g, [edgeless(3), co_biclique_universal(3, 4)]).free
    for g in instances_4p1(count=8, max_n=10):
        assert is_free(g, [edgeless(4), co_biclique_universal(2, 4)]).free
