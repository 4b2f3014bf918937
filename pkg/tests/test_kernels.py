"""Backend-equivalence and oracle tests for the hot kernels."""

from itertools import combinations

import numpy as np
import pytest

from widthlab import _kernels
from widthlab._kernels import pykernels
from widthlab.graphs import Graph, build_named, mask_of

from conftest import random_graph


def oracle_cut_matching(g: Graph, a_mask: int, b_mask: int, in_graph: bool) -> int:
    """Enumerate all subsets of cross edges, keep induced matchings."""
    cross = [(u, v) for u, v in
             ((u, v) for u in range(g.n) for v in range(g.n))
             if (a_mask >> u) & 1 and (b_mask >> v) & 1 and g.has_edge(u, v)]
    best = 0
    for k in range(len(cross), 0, -1):
        if k <= best:
            break
        for sub in combinations(cross, k):
            verts = [x for e in sub for x in e]
            if len(set(verts)) != 2 * k:
                continue
            ok = True
            for i in range(k):
                for j in range(i + 1, k):
                    ui, vi = sub[i]
                    uj, vj = sub[j]
                    pairs = [(ui, vj), (uj, vi)]
                    if in_graph:
                        pairs += [(ui, uj), (vi, vj)]
                    if any(g.has_edge(a, b) for a, b in pairs):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                best = max(best, k)
                break
    return best


def test_cut_matching_against_oracle(rng):
    for _ in range(60):
        n = rng.randrange(2, 9)
        g = random_graph(rng, n, rng.randrange(20, 95))
        a = rng.randrange(1, (1 << n) - 1)
        b = (g.full_mask ^ a)
        for in_graph in (False, True):
            got = _kernels.cut_matching(g.masks, a, b, in_graph)
            want = oracle_cut_matching(g, a, b, in_graph)
            assert got == want, (g.edges, bin(a), in_graph)


def test_cut_matching_disjoint_sides(rng):
    # sides need not cover the graph: used by the per-class claim checks
    for _ in range(30):
        n = rng.randrange(4, 9)
        g = random_graph(rng, n, 60)
        verts = list(range(n))
        rng.shuffle(verts)
        a = mask_of(verts[:n // 3])
        b = mask_of(verts[n // 3: 2 * n // 3])
        for in_graph in (False, True):
            got = _kernels.cut_matching(g.masks, a, b, in_graph)
            want = oracle_cut_matching(g, a, b, in_graph)
            assert got == want


def test_cut_matching_examples():
    p4 = build_named("P", [4])
    assert _kernels.cut_matching(p4.masks, 0b0011, 0b1100, False) == 1
    assert _kernels.cut_matching(p4.masks, 0b0011, 0b1100, True) == 1
    # C4 cut across both rungs: inside edges spoil inducedness in G only
    c4 = Graph.from_edges(4, [(0, 1), (2, 3), (0, 2), (1, 3)])
    a, b = 0b0011, 0b1100
    assert _kernels.cut_matching(c4.masks, a, b, False) == 2
    assert _kernels.cut_matching(c4.masks, a, b, True) == 1
    edgeless = Graph.from_edges(3, [])
    assert _kernels.cut_matching(edgeless.masks, 0b001, 0b110, False) == 0


def test_backend_equivalence_cut(rng):
    if _kernels.nbkernels is None:
        pytest.skip("numba backend unavailable")
    nb = _kernels.nbkernels
    for _ in range(40):
        n = rng.randrange(2, 10)
        g = random_graph(rng, n, rng.randrange(10, 95))
        a = rng.randrange(1, (1 << n) - 1)
        b = g.full_mask ^ a
        for in_graph in (False, True):
            r_nb = nb.cut_matching(g.mask_array, np.int64(a), np.int64(b),
                                   in_graph, pykernels.BIG)
            r_py = pykernels.cut_matching(g.masks, a, b, in_graph)
            assert int(r_nb) == r_py


def test_backend_equivalence_table_and_search(rng):
    if _kernels.nbkernels is None:
        pytest.skip("numba backend unavailable")
    nb = _kernels.nbkernels
    for _ in range(15):
        n = rng.randrange(3, 8)
        g = random_graph(rng, n, rng.randrange(15, 90))
        for in_graph in (False, True):
            t_nb = nb.cut_table(g.mask_array, n, in_graph)
            t_py = pykernels.cut_table(g.masks, n, in_graph)
            assert list(map(int, t_nb)) == t_py
        lb = 0 if g.m == 0 else 1
        t_py = pykernels.cut_table(g.masks, n, False)
        b_nb, c_nb = nb.width_search(np.array(t_py, dtype=np.int64), n, lb)
        b_py, c_py = pykernels.width_search(t_py, n, lb)
        assert int(b_nb) == b_py
        assert [int(c) for c in c_nb] == c_py


def test_python_path_used_above_word_size():
    # 70 isolated vertices plus one long matching: exceeds int64 masks
    n = 70
    edges = [(2 * i, 2 * i + 1) for i in range(n // 2)]
    g = Graph.from_edges(n, edges)
    a = mask_of(range(0, n, 2))
    b = mask_of(range(1, n, 2))
    assert _kernels.cut_matching(g.masks, a, b, False) == n // 2


def test_mis_size_cap():
    conf = [0] * 10
    assert pykernels.mis_size(conf, (1 << 10) - 1, cap=3) >= 3
