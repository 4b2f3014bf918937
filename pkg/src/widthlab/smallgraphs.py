"""Exhaustive small-graph enumeration up to isomorphism.

Used by the verification suites that quantify over "all graphs with
n <= 7". Enumeration is by vertex augmentation with canonical-form
deduplication; the canonical form is the lexicographically smallest
upper-triangle adjacency bitstring over all permutations compatible with
an iterated neighbour-class refinement, which keeps the permutation
blow-up confined to the few highly regular graphs.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from .errors import UsageError
from .graphs import Graph, build_named, disjoint_union


def _refine_classes(g: Graph) -> list[int]:
    """Iterated degree refinement; returns a class id per vertex."""
    colour = [g.degree(v) for v in range(g.n)]
    while True:
        sig = [(colour[v], tuple(sorted(colour[u] for u in g.neighbours[v])))
               for v in range(g.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [palette[s] for s in sig]
        if new == colour:
            return colour
        colour = new


def _tri_key(g: Graph, perm: tuple[int, ...]) -> int:
    """Upper-triangle adjacency bits under the relabelling v -> perm[v]."""
    key = 0
    bit = 0
    inv = [0] * g.n
    for v, p in enumerate(perm):
        inv[p] = v
    for i in range(g.n):
        mi = g.masks[inv[i]]
        for j in range(i + 1, g.n):
            if (mi >> inv[j]) & 1:
                key |= 1 << bit
            bit += 1
    return key


def canonical_form(g: Graph) -> tuple[int, int]:
    """(n, minimum adjacency key) — equal exactly for isomorphic graphs."""
    if g.n <= 1:
        return (g.n, 0)
    classes = _refine_classes(g)
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(classes):
        groups.setdefault(c, []).append(v)
    ordered = [groups[c] for c in sorted(groups)]
    best = None
    for parts in product(*[permutations(grp) for grp in ordered]):
        perm = [0] * g.n
        pos = 0
        for part in parts:
            for v in part:
                perm[v] = pos
                pos += 1
        key = _tri_key(g, tuple(perm))
        if best is None or key < best:
            best = key
    return (g.n, best)


@lru_cache(maxsize=None)
def enumerate_graphs(n: int) -> tuple[Graph, ...]:
    """All graphs on exactly n vertices, one per isomorphism class."""
    if n < 1:
        raise UsageError("need n >= 1")
    if n == 1:
        return (Graph.from_edges(1, []),)
    out = []
    seen = set()
    for g in enumerate_graphs(n - 1):
        for mask in range(1 << (n - 1)):
            edges = list(g.edges) + [(v, n - 1) for v in range(n - 1)
                                     if (mask >> v) & 1]
            cand = Graph.from_edges(n, edges)
            key = canonical_form(cand)
            if key not in seen:
                seen.add(key)
                out.append(cand)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_connected_graphs(n: int) -> tuple[Graph, ...]:
    return tuple(g for g in enumerate_graphs(n) if g.is_connected())


def enumerate_maxdeg2_graphs(max_n: int) -> list[Graph]:
    """Every disjoint union of paths and cycles with 2 <= n <= max_n, one
    per isomorphism class (multisets of components, non-increasing)."""
    pieces = [("P", k) for k in range(1, max_n + 1)] + \
             [("C", k) for k in range(3, max_n + 1)]
    order = {p: i for i, p in enumerate(pieces)}

    out: list[Graph] = []

    def grow(budget: int, start: int, chosen: list[tuple[str, int]]) -> None:
        total = sum(k for _, k in chosen)
        if total >= 2:
            g = None
            for fam, k in chosen:
                piece = build_named(fam, [k])
                g = piece if g is None else disjoint_union(g, piece)
            out.append(g)
        for i in range(start, len(pieces)):
            fam, k = pieces[i]
            if k <= budget:
                grow(budget - k, i, chosen + [(fam, k)])

    grow(max_n, 0, [])
    return out
