"""Simple undirected graphs: representation, named builders, combinators, I/O.

Vertices are always 0..n-1. Graphs are immutable after construction; every
combinator returns a new graph, so values can be shared freely across
concurrent work. Adjacency is kept redundantly as neighbour bitmasks (one
Python int per vertex, the workhorse for all searches), sorted neighbour
lists and a dense boolean matrix; all are derived from the canonical edge
list, so they cannot drift apart.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError


def mask_of(vertices: Iterable[int]) -> int:
    """Bitmask with one bit per vertex."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits_of(mask: int) -> list[int]:
    """Vertices of a bitmask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    `edges` is canonical: each pair sorted ascending, the list sorted
    lexicographically, no duplicates, no loops.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> "Graph":
        if n < 0:
            raise UsageError(f"vertex count must be non-negative, got {n}")
        canon = set()
        for u, v in edges:
            if u == v:
                raise UsageError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise UsageError(f"edge ({u},{v}) out of range for n={n}")
            canon.add((u, v) if u < v else (v, u))
        lab = None if labels is None else tuple(str(x) for x in labels)
        if lab is not None and len(lab) != n:
            raise UsageError("labels must have one entry per vertex")
        return Graph(n, tuple(sorted(canon)), lab)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbour bitmask per vertex."""
        ms = [0] * self.n
        for u, v in self.edges:
            ms[u] |= 1 << v
            ms[v] |= 1 << u
        return tuple(ms)

    @cached_property
    def neighbours(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(bits_of(m)) for m in self.masks)

    @cached_property
    def matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges:
            a[u, v] = a[v, u] = True
        a.setflags(write=False)
        return a

    @cached_property
    def mask_array(self) -> np.ndarray:
        """Neighbour masks as int64, usable by the numba kernels (n <= 62)."""
        return np.array(self.masks, dtype=np.int64)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.masks[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.masks[v].bit_count()

    def max_degree(self) -> int:
        return max((m.bit_count() for m in self.masks), default=0)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, in order of smallest vertex."""
        seen = 0
        out = []
        for s in range(self.n):
            if (seen >> s) & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in bits_of(frontier):
                    nxt |= self.masks[v]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            out.append(bits_of(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image under vertex map v -> perm[v]."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------

def build_named(name: str, params: Sequence[int]) -> Graph:
    """Canonical graph of a named family, deterministic numbering.

    P n        path 0-1-...-(n-1), left to right
    C n        cycle 0-1-...-(n-1)-0, n >= 3
    K n        complete graph
    Kst s t    complete bipartite, left class 0..s-1, right class s..s+t-1
    Kpartite a b c ...   complete multipartite, classes in given order
    grid h w   h*w grid, row-major numbering, h rows and w columns
    """
    params = [int(p) for p in params]

    def need(k: int) -> None:
        if len(params) != k:
            raise UsageError(f"family {name!r} takes {k} parameter(s), got {len(params)}")

    if name == "P":
        need(1)
        n = params[0]
        if n < 1:
            raise UsageError("P n needs n >= 1")
        return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))
    if name == "C":
        need(1)
        n = params[0]
        if n < 3:
            raise UsageError("C n needs n >= 3")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if name == "K":
        need(1)
        n = params[0]
        if n < 1:
            raise UsageError("K n needs n >= 1")
        return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))
    if name == "Kst":
        need(2)
        s, t = params
        if s < 1 or t < 1:
            raise UsageError("Kst needs s,t >= 1")
        return Graph.from_edges(s + t, ((i, s + j) for i in range(s) for j in range(t)))
    if name == "Kpartite":
        if not params or any(p < 1 for p in params):
            raise UsageError("Kpartite needs positive class sizes")
        bounds = [0]
        for p in params:
            bounds.append(bounds[-1] + p)
        cls = []
        for i, p in enumerate(params):
            cls.extend([i] * p)
        n = bounds[-1]
        return Graph.from_edges(
            n, ((u, v) for u in range(n) for v in range(u + 1, n) if cls[u] != cls[v]))
    if name == "grid":
        need(2)
        h, w = params
        if h < 1 or w < 1:
            raise UsageError("grid needs h,w >= 1")
        edges = []
        for i in range(h):
            for j in range(w):
                v = i * w + j
                if j + 1 < w:
                    edges.append((v, v + 1))
                if i + 1 < h:
                    edges.append((v, v + w))
        return Graph.from_edges(h * w, edges)
    raise UsageError(f"unknown graph family {name!r}")


# ---------------------------------------------------------------------------
# Combinators
# ---------------------------------------------------------------------------

def complement(g: Graph) -> Graph:
    return Graph.from_edges(
        g.n,
        ((u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)),
        labels=g.labels)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """g + h; h's vertices are shifted up by g.n."""
    edges = list(g.edges) + [(u + g.n, v + g.n) for u, v in h.edges]
    labels = None
    if g.labels is not None and h.labels is not None:
        labels = g.labels + h.labels
    return Graph.from_edges(g.n + h.n, edges, labels)


def repeated_union(k: int, g: Graph) -> Graph:
    """kG, the disjoint union of k copies."""
    if k < 1:
        raise UsageError("need k >= 1 copies")
    out = g
    for _ in range(k - 1):
        out = disjoint_union(out, g)
    return out


def subdivide(g: Graph, edge: tuple[int, int], k: int) -> Graph:
    """k-subdivision of one edge: k new vertices g.n..g.n+k-1 appended in
    path order from edge[0] to edge[1]."""
    u, v = edge
    if not g.has_edge(u, v):
        raise UsageError(f"edge ({u},{v}) not present")
    if k < 1:
        raise UsageError("subdivision needs k >= 1")
    key = (u, v) if u < v else (v, u)
    edges = [e for e in g.edges if e != key]
    path = [u] + [g.n + i for i in range(k)] + [v]
    edges.extend((path[i], path[i + 1]) for i in range(len(path) - 1))
    return Graph.from_edges(g.n + k, edges)


def subdivide_all_edges(g: Graph) -> Graph:
    """1-subdivision of every edge; new vertex for edge i is g.n + i, in
    canonical edge order."""
    edges = []
    for i, (u, v) in enumerate(g.edges):
        w = g.n + i
        edges.append((u, w))
        edges.append((w, v))
    return Graph.from_edges(g.n + g.m, edges)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """G[S] relabelled to 0..|S|-1 preserving vertex order, plus the map
    new index -> original vertex."""
    vs = sorted(set(vertices))
    for v in vs:
        if not (0 <= v < g.n):
            raise UsageError(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(vs)}
    edges = ((pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos)
    labels = None if g.labels is None else [g.labels[v] for v in vs]
    return Graph.from_edges(len(vs), edges, labels), tuple(vs)


def add_edges(g: Graph, extra: Iterable[tuple[int, int]]) -> Graph:
    return Graph.from_edges(g.n, list(g.edges) + list(extra), g.labels)


def delete_vertex(g: Graph, v: int) -> Graph:
    sub, _ = induced_subgraph(g, [u for u in range(g.n) if u != v])
    return sub


# ---------------------------------------------------------------------------
# File format and DOT export
# ---------------------------------------------------------------------------

def graph_to_json(g: Graph) -> str:
    """Bit-exact text form: sorted keys, no spaces, trailing newline."""
    obj: dict = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if g.labels is not None:
        obj["labels"] = list(g.labels)
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def graph_from_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
        n = obj["n"]
        edges = [tuple(e) for e in obj["edges"]]
        labels = obj.get("labels")
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed graph file: {exc}") from exc
    return Graph.from_edges(n, edges, labels)


def write_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(graph_to_json(g))


def read_graph(path) -> Graph:
    with open(path) as fh:
        return graph_from_json(fh.read())


def graph_to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        label = g.labels[v] if g.labels is not None else str(v)
        lines.append(f'  {v} [label="{label}"];')
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
