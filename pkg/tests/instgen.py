"""Instance corpora for the certified-decomposition suites.

Structured families plus rejection sampling in the complement: a graph is
3P1-free iff its complement is triangle-free, and 4P1-free iff the
complement is K4-free, so sampling triangle-free / K4-free complements
guarantees the first pattern and only the co-biclique pattern needs a
rejection test.
"""

import random

from widthlab.graphs import Graph, build_named, complement
from widthlab.patterns import co_biclique_universal, edgeless, is_free


def _greedy_free_complement(rand: random.Random, n: int, clique_cap: int,
                            tries: int) -> Graph:
    """Random graph with no K_{clique_cap}, grown by rejection: an edge uv
    goes in only if N(u) & N(v) holds no (cap-2)-clique yet."""
    edges: set[tuple[int, int]] = set()
    masks = [0] * n

    def has_clique(cand: int, size: int) -> bool:
        if size == 0:
            return True
        m = cand
        while m:
            low = m & -m
            w = low.bit_length() - 1
            m ^= low
            if has_clique(m & masks[w], size - 1):
                return True
        return False

    for _ in range(tries):
        u = rand.randrange(n)
        v = rand.randrange(n)
        if u == v or (min(u, v), max(u, v)) in edges:
            continue
        if has_clique(masks[u] & masks[v], clique_cap - 2):
            continue
        edges.add((min(u, v), max(u, v)))
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return Graph.from_edges(n, edges)


def instances_3p1(count: int = 100, max_n: int = 24, seed: int = 20240) -> list[Graph]:
    """>= count verified (3P1, co(K_{3,4}+P1))-free graphs, n <= max_n."""
    rand = random.Random(seed)
    specs = [edgeless(3), co_biclique_universal(3, 4)]
    out = []
    # structured: cliques, co-cycles, cocktail-party graphs, tiny specials
    for n in (1, 2, 3, 5, 8, 13, 21, max_n):
        out.append(build_named("K", [min(n, max_n)]))
    for n in (4, 5, 7, 9, 12, 15, 18, 21, max_n):
        out.append(complement(build_named("C", [n])))
    for parts in ([2, 2], [2, 2, 2], [2, 2, 2, 2], [2] * 6, [2] * 8,
                  [2] * 10, [2] * 12, [1, 2, 2]):
        out.append(build_named("Kpartite", parts))
    out.append(build_named("C", [4]))
    out.append(build_named("C", [5]))
    keep = [g for g in out if is_free(g, specs).free]
    assert len(keep) == len(out), "structured 3p1 family must be free by design"
    while len(keep) < count:
        n = rand.randrange(6, max_n + 1)
        tries = rand.randrange(n, 3 * n * n)
        co = _greedy_free_complement(rand, n, 3, tries)
        g = complement(co)
        if is_free(g, specs).free:
            keep.append(g)
    return keep


def instances_4p1(count: int = 100, max_n: int = 20, seed: int = 42424) -> list[Graph]:
    """>= count verified (4P1, co(K_{2,4}+P1))-free graphs, n <= max_n."""
    rand = random.Random(seed)
    specs = [edgeless(4), co_biclique_universal(2, 4)]
    out = []
    for n in (1, 2, 4, 6, 9, 14, max_n):
        out.append(build_named("K", [n]))
    for n in (4, 6, 8, 10, 13, 16, 19, max_n):
        out.append(complement(build_named("C", [n])))
    for parts in ([2, 2, 2], [3, 3], [3, 3, 3], [2, 3, 3], [1, 3, 3],
                  [3, 3, 2, 2], [3, 3, 3, 3], [2] * 7):
        out.append(build_named("Kpartite", parts))
    keep = [g for g in out if is_free(g, specs).free]
    assert len(keep) == len(out), "structured 4p1 family must be free by design"
    while len(keep) < count:
        n = rand.randrange(6, max_n + 1)
        tries = rand.randrange(n, 3 * n * n)
        co = _greedy_free_complement(rand, n, 4, tries)
        g = complement(co)
        if is_free(g, specs).free:
            keep.append(g)
    return keep
