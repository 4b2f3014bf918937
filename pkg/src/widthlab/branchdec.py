"""Branch decompositions and their induced-matching cut widths.

A branch decomposition is a subcubic tree plus a bijection from graph
vertices to its leaves; every tree edge cuts the vertex set in two. The
two cut functions differ only in where inducedness is judged: cutmim in
the bipartite cut graph (edges inside a side are erased), cutsim in the
host graph itself. Exact minimum widths come from exhaustive search over
all leaf-labelled subcubic tree shapes, which is why the default cap is
nine leaves ((2n-5)!! shapes).

Degree-2 tree nodes are allowed only when marked: the constructions here
subdivide tree edges on purpose (attachment nodes between sub-trees), and
a marked node induces the same cut as either incident edge, so widths are
unaffected.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import cached_property

from . import _kernels
from .errors import InvariantViolation, UsageError
from .graphs import Graph, bits_of, mask_of

DEFAULT_EXACT_CAP = 9


def exact_cap() -> int:
    """Vertex cap for exhaustive width search; WIDTHLAB_EXACT_CAP overrides."""
    raw = os.environ.get("WIDTHLAB_EXACT_CAP")
    if raw is None:
        return DEFAULT_EXACT_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"WIDTHLAB_EXACT_CAP must be an integer, got {raw!r}") from exc


# ---------------------------------------------------------------------------
# Tree building
# ---------------------------------------------------------------------------

class TreeBuilder:
    """Mutable unrooted tree under construction; nodes get fresh ids.

    Degree-2 nodes must be registered via `mark_degree2`; `build` renumbers
    nodes contiguously and returns an immutable decomposition.
    """

    def __init__(self) -> None:
        self.adj: dict[int, set[int]] = {}
        self._next = 0
        self.leaf_vertex: dict[int, int] = {}
        self.degree2_ok: set[int] = set()

    def add_node(self) -> int:
        node = self._next
        self._next += 1
        self.adj[node] = set()
        return node

    def add_edge(self, a: int, b: int) -> None:
        self.adj[a].add(b)
        self.adj[b].add(a)

    def remove_edge(self, a: int, b: int) -> None:
        self.adj[a].discard(b)
        self.adj[b].discard(a)

    def remove_node(self, node: int) -> None:
        for other in list(self.adj[node]):
            self.remove_edge(node, other)
        del self.adj[node]
        self.leaf_vertex.pop(node, None)
        self.degree2_ok.discard(node)

    def degree(self, node: int) -> int:
        return len(self.adj[node])

    def mark_degree2(self, node: int) -> None:
        self.degree2_ok.add(node)

    def set_leaf(self, node: int, vertex: int) -> None:
        self.leaf_vertex[node] = vertex

    def subdivide(self, a: int, b: int) -> int:
        """Replace edge ab by a marked degree-2 node; returns it."""
        if b not in self.adj[a]:
            raise UsageError(f"tree edge ({a},{b}) not present")
        w = self.add_node()
        self.remove_edge(a, b)
        self.add_edge(a, w)
        self.add_edge(w, b)
        self.mark_degree2(w)
        return w

    def caterpillar(self, ell: int) -> tuple[list[int], list[int]]:
        """Paper-shape ell-caterpillar: backbone s_1..s_ell, one leaf per
        backbone node. The two backbone ends have degree 2 and are marked.
        Returns (backbone, leaves)."""
        if ell < 1:
            raise UsageError("caterpillar needs ell >= 1")
        backbone = [self.add_node() for _ in range(ell)]
        leaves = [self.add_node() for _ in range(ell)]
        for i in range(ell):
            self.add_edge(backbone[i], leaves[i])
        for i in range(ell - 1):
            self.add_edge(backbone[i], backbone[i + 1])
        if ell >= 2:
            self.mark_degree2(backbone[0])
            self.mark_degree2(backbone[-1])
        return backbone, leaves

    def trim_leaf(self, v: int) -> None:
        """Delete v and its pendant path up to (excluding) the nearest node
        of degree >= 3."""
        if self.degree(v) != 1:
            raise UsageError(f"node {v} is not a leaf")
        path = [v]
        cur = v
        prev = -1
        while True:
            nbrs = [w for w in self.adj[cur] if w != prev]
            if not nbrs:
                raise UsageError("tree is a bare path; no degree-3 node to trim to")
            anchor = nbrs[0]
            if self.degree(anchor) >= 3:
                break
            path.append(anchor)
            prev, cur = cur, anchor
        for node in path:
            self.remove_node(node)
        if self.degree(anchor) == 2:
            self.mark_degree2(anchor)

    def build(self, host: Graph) -> "BranchDecomposition":
        nodes = sorted(self.adj)
        renum = {node: i for i, node in enumerate(nodes)}
        edges = sorted({tuple(sorted((renum[a], renum[b])))
                        for a in self.adj for b in self.adj[a]})
        leaf_entries = tuple(sorted((renum[node], v)
                                    for node, v in self.leaf_vertex.items()))
        # nodes that ended with degree 2 must have been marked
        marked = {renum[n] for n in self.degree2_ok if n in self.adj}
        extra = {renum[n] for n in self.adj if len(self.adj[n]) == 2} - marked
        marked |= extra  # trimming can demote a degree-3 anchor; keep it legal
        sub = frozenset(m for m in marked
                        if len([e for e in edges if m in e]) == 2)
        bd = BranchDecomposition(host, len(nodes), tuple(edges), leaf_entries, sub)
        bd.validate()
        return bd


def trim_leaf(builder: TreeBuilder, v: int) -> TreeBuilder:
    """Functional wrapper over TreeBuilder.trim_leaf."""
    builder.trim_leaf(v)
    return builder


# ---------------------------------------------------------------------------
# Decomposition type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchDecomposition:
    """Subcubic tree plus leaf bijection onto the host's vertices."""

    host: Graph
    nodes: int
    tree_edges: tuple[tuple[int, int], ...]
    leaf_entries: tuple[tuple[int, int], ...]
    subdivision_nodes: frozenset[int] = frozenset()

    @cached_property
    def vertex_of_leaf(self) -> dict[int, int]:
        return dict(self.leaf_entries)

    @cached_property
    def leaf_of_vertex(self) -> dict[int, int]:
        return {v: node for node, v in self.leaf_entries}

    @cached_property
    def tree_adj(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.nodes)]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(x)) for x in adj)

    def validate(self) -> None:
        n = self.host.n
        if n == 0:
            raise UsageError("cannot decompose the null graph")
        if self.nodes != len(self.tree_edges) + 1:
            raise InvariantViolation("tree node/edge count mismatch")
        if self.nodes > 1:
            # connectivity
            seen = {0}
            stack = [0]
            while stack:
                x = stack.pop()
                for y in self.tree_adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != self.nodes:
                raise InvariantViolation("tree is not connected")
        mapped = self.vertex_of_leaf
        if sorted(mapped.values()) != list(range(n)):
            raise InvariantViolation("leaf map is not a bijection onto V(host)")
        for node in range(self.nodes):
            deg = len(self.tree_adj[node])
            if node in mapped:
                if deg > 1 or (deg == 0 and self.nodes > 1):
                    raise InvariantViolation(f"mapped leaf {node} has degree {deg}")
            elif deg == 2:
                if node not in self.subdivision_nodes:
                    raise InvariantViolation(f"unmarked degree-2 node {node}")
            elif deg != 3:
                raise InvariantViolation(f"internal node {node} has degree {deg}")

    @cached_property
    def cut_masks(self) -> dict[tuple[int, int], int]:
        """Far-side host-vertex mask per tree edge; 'far' is the side away
        from tree node 0."""
        parent = [-1] * self.nodes
        order = [0]
        seen = {0}
        for x in order:
            for y in self.tree_adj[x]:
                if y not in seen:
                    seen.add(y)
                    parent[y] = x
                    order.append(y)
        sub = [0] * self.nodes
        for x in reversed(order):
            v = self.vertex_of_leaf.get(x)
            if v is not None:
                sub[x] |= 1 << v
            if parent[x] >= 0:
                sub[parent[x]] |= sub[x]
        out = {}
        for a, b in self.tree_edges:
            child = b if parent[b] == a else a
            out[(a, b)] = sub[child]
        return out


@dataclass(frozen=True)
class Cut:
    edge: tuple[int, int]
    side_a: frozenset[int]
    side_b: frozenset[int]


@dataclass(frozen=True)
class CutWidths:
    cutmim: int
    cutsim: int


@dataclass(frozen=True)
class WidthReport:
    per_edge: tuple[tuple[tuple[int, int], CutWidths], ...]
    mimw: int
    simw: int


def cut_of_edge(bd: BranchDecomposition, edge: tuple[int, int]) -> Cut:
    """Vertex bipartition induced by a tree edge. side_a holds the leaves on
    the side of the smaller-numbered endpoint."""
    key = tuple(sorted(edge))
    if key not in bd.cut_masks:
        raise UsageError(f"tree edge {edge} not present")
    far = bd.cut_masks[key]
    full = bd.host.full_mask
    near = full & ~far
    # far is the side away from node 0; orient so side_a belongs to key[0]
    side_for_smaller = far if _side_of(bd, key, key[0]) == "far" else near
    return Cut(key, frozenset(bits_of(side_for_smaller)),
               frozenset(bits_of(full & ~side_for_smaller)))


def _side_of(bd: BranchDecomposition, edge: tuple[int, int], node: int) -> str:
    # walk from node 0: the far side of (a,b) is the component not holding 0
    a, b = edge
    seen = {node}
    stack = [node]
    while stack:
        x = stack.pop()
        if x == 0:
            return "near"
        for y in bd.tree_adj[x]:
            if {x, y} == {a, b} or y in seen:
                continue
            seen.add(y)
            stack.append(y)
    return "far"


def cut_widths(g: Graph, cut: Cut) -> CutWidths:
    """Exact cutmim and cutsim of a bipartition of V(g)."""
    a = mask_of(cut.side_a)
    b = mask_of(cut.side_b)
    if (a & b) or (a | b) != g.full_mask or ((a == 0 or b == 0) and g.n > 1):
        raise UsageError("cut sides must partition the vertex set")
    return CutWidths(
        cutmim=_kernels.cut_matching(g.masks, a, b, False, n=g.n,
                                     mask_array=_arr(g)),
        cutsim=_kernels.cut_matching(g.masks, a, b, True, n=g.n,
                                     mask_array=_arr(g)))


def _arr(g: Graph):
    return g.mask_array if g.n <= 62 else None


def evaluate(bd: BranchDecomposition) -> WidthReport:
    """Exact per-edge cut widths and their maxima."""
    g = bd.host
    full = g.full_mask
    arr = _arr(g)
    per_edge = []
    mimw = simw = 0
    for edge in bd.tree_edges:
        far = bd.cut_masks[edge]
        cm = _kernels.cut_matching(g.masks, far, full & ~far, False, n=g.n,
                                   mask_array=arr)
        cs = _kernels.cut_matching(g.masks, far, full & ~far, True, n=g.n,
                                   mask_array=arr)
        per_edge.append((edge, CutWidths(cm, cs)))
        mimw = max(mimw, cm)
        simw = max(simw, cs)
    return WidthReport(tuple(per_edge), mimw, simw)


# ---------------------------------------------------------------------------
# Exact width by exhaustive search
# ---------------------------------------------------------------------------

def exact_width(g: Graph, which: str = "mim",
                cap: int | None = None) -> tuple[int, BranchDecomposition]:
    """Minimum width over every branch decomposition, with a witness.

    Enumerates all (2n-5)!! leaf-labelled subcubic tree shapes by iterative
    leaf insertion; per-cut values come from a precomputed table over all
    2^n bipartitions. The witness is the first optimal tree in insertion
    order.
    """
    if which not in ("mim", "sim"):
        raise UsageError("which must be 'mim' or 'sim'")
    limit = exact_cap() if cap is None else cap
    if g.n > limit:
        raise UsageError(
            f"exact width needs n <= {limit} (got {g.n}); "
            "raise WIDTHLAB_EXACT_CAP to override")
    if g.n == 0:
        raise UsageError("cannot decompose the null graph")
    if g.n == 1:
        bd = BranchDecomposition(g, 1, (), ((0, 0),))
        return 0, bd
    table = _kernels.cut_table(g.masks, g.n, which == "sim", mask_array=_arr(g))
    lower = 0 if g.m == 0 else 1
    best, choices = _kernels.width_search(table, g.n, lower)
    return best, _rebuild_witness(g, choices)


def _rebuild_witness(g: Graph, choices: list[int]) -> BranchDecomposition:
    """Replay an insertion-choice vector into a concrete tree; slot order
    matches the search kernel exactly."""
    b = TreeBuilder()
    leaf = [b.add_node() for _ in range(2)]
    b.add_edge(leaf[0], leaf[1])
    b.set_leaf(leaf[0], 0)
    b.set_leaf(leaf[1], 1)
    # ordered edge slots as (near, far) node pairs
    slots: list[tuple[int, int]] = [(leaf[0], leaf[1])]
    for k, c in enumerate(choices):
        v = k + 2
        near, far = slots[c]
        w = b.add_node()
        b.remove_edge(near, far)
        b.add_edge(near, w)
        b.add_edge(w, far)
        lv = b.add_node()
        b.add_edge(w, lv)
        b.set_leaf(lv, v)
        slots[c] = (w, far)
        slots.append((near, w))
        slots.append((w, lv))
    return b.build(g)


# ---------------------------------------------------------------------------
# Constructive decompositions
# ---------------------------------------------------------------------------

def caterpillar_decomposition(g: Graph, order) -> BranchDecomposition:
    """Caterpillar over the given leaf order: backbone s_1..s_n, leaf t_i
    holding order[i]."""
    order = list(order)
    if sorted(order) != list(range(g.n)):
        raise UsageError("order must be a permutation of the vertices")
    b = TreeBuilder()
    if g.n == 1:
        node = b.add_node()
        b.set_leaf(node, order[0])
        return b.build(g)
    if g.n == 2:
        x, y = b.add_node(), b.add_node()
        b.add_edge(x, y)
        b.set_leaf(x, order[0])
        b.set_leaf(y, order[1])
        return b.build(g)
    _, leaves = b.caterpillar(g.n)
    for i, v in enumerate(order):
        b.set_leaf(leaves[i], v)
    return b.build(g)


def _component_order_maxdeg2(g: Graph, comp: list[int]) -> list[int]:
    """Path order from the smaller endpoint, or cyclic order from the
    smallest vertex towards its smaller neighbour."""
    if len(comp) == 1:
        return list(comp)
    compset = set(comp)

    def next_of(v: int, prev: int) -> list[int]:
        return [w for w in g.neighbours[v] if w in compset and w != prev]

    ends = sorted(v for v in comp
                  if len([w for w in g.neighbours[v] if w in compset]) <= 1)
    if ends:
        out = [ends[0]]
        prev = -1
        while True:
            nxt = next_of(out[-1], prev)
            if not nxt:
                return out
            prev = out[-1]
            out.append(nxt[0])
    start = comp[0]  # components() sorts, so this is the smallest vertex
    out = [start, min(w for w in g.neighbours[start] if w in compset)]
    prev = start
    while True:
        nxt = next_of(out[-1], prev)[0]
        if nxt == start:
            return out
        prev = out[-1]
        out.append(nxt)


def maxdeg2_decomposition(g: Graph) -> BranchDecomposition:
    """Linear-time decomposition of a graph of maximum degree <= 2 with
    width at most 2: one caterpillar per component, each hooked through a
    subdivision node onto a spine caterpillar (dropped when there is a
    single component)."""
    if g.n < 2:
        raise UsageError("need at least two vertices")
    bad = [v for v in range(g.n) if g.degree(v) > 2]
    if bad:
        raise UsageError(f"vertex {bad[0]} has degree {g.degree(bad[0])} > 2")
    comps = g.components()
    b = TreeBuilder()
    hooks = []
    for comp in comps:
        ordered = _component_order_maxdeg2(g, comp)
        backbone, leaves = b.caterpillar(len(ordered))
        for i, v in enumerate(ordered):
            b.set_leaf(leaves[i], v)
        if len(backbone) >= 2:
            hooks.append(b.subdivide(backbone[0], backbone[1]))
        else:
            b.mark_degree2(backbone[0])
            hooks.append(backbone[0])
    if len(comps) > 1:
        spine, spine_leaves = b.caterpillar(len(comps))
        for i, hook in enumerate(hooks):
            b.add_edge(spine_leaves[i], hook)
            b.mark_degree2(spine_leaves[i])
    return b.build(g)


def extend_with_pendant(bd: BranchDecomposition, attach_to: int | None = None
                        ) -> BranchDecomposition:
    """Decomposition of host + one new vertex of degree <= 1 (a pendant on
    `attach_to`, or isolated when None), obtained by replacing one leaf
    with a cherry. Width never rises above max(old width, 1)."""
    g = bd.host
    new_v = g.n
    if attach_to is not None and not (0 <= attach_to < g.n):
        raise UsageError(f"attach vertex {attach_to} not in host")
    edges = list(g.edges) + ([(attach_to, new_v)] if attach_to is not None else [])
    host2 = Graph.from_edges(g.n + 1, edges)
    anchor_vertex = attach_to if attach_to is not None else min(bd.leaf_of_vertex)
    b = TreeBuilder()
    renum = {}
    for node in range(bd.nodes):
        renum[node] = b.add_node()
    for a, bb in bd.tree_edges:
        b.add_edge(renum[a], renum[bb])
    for node in bd.subdivision_nodes:
        b.mark_degree2(renum[node])
    for node, v in bd.leaf_entries:
        if v != anchor_vertex:
            b.set_leaf(renum[node], v)
    spot = renum[bd.leaf_of_vertex[anchor_vertex]]
    c1 = b.add_node()
    c2 = b.add_node()
    b.add_edge(spot, c1)
    b.add_edge(spot, c2)
    b.set_leaf(c1, anchor_vertex)
    b.set_leaf(c2, new_v)
    if bd.nodes == 1:
        b.mark_degree2(spot)
    return b.build(host2)


def partitioned_width_bound(g: Graph, bd: BranchDecomposition, parts) -> int:
    """Upper bound on the decomposition's mim-width from a vertex partition:
    max over tree edges of the sum of per-class-pair cut values."""
    masks = [mask_of(p) for p in parts]
    if sum(m.bit_count() for m in masks) != g.n or \
            any(masks[i] & masks[j] for i in range(len(masks))
                for j in range(i + 1, len(masks))):
        raise UsageError("parts must partition the vertex set")
    arr = _arr(g)
    full = g.full_mask
    best = 0
    for edge in bd.tree_edges:
        far = bd.cut_masks[edge]
        near = full & ~far
        total = 0
        for mi in masks:
            for mj in masks:
                total += _kernels.cut_matching(g.masks, far & mi, near & mj,
                                               False, n=g.n, mask_array=arr)
        best = max(best, total)
    return best


# ---------------------------------------------------------------------------
# File format and DOT export
# ---------------------------------------------------------------------------

def bd_to_json(bd: BranchDecomposition) -> str:
    obj = {
        "nodes": bd.nodes,
        "edges": [list(e) for e in bd.tree_edges],
        "leaf_map": {str(node): v for node, v in bd.leaf_entries},
        "subdivision_nodes": sorted(bd.subdivision_nodes),
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def bd_from_json(text: str, host: Graph) -> BranchDecomposition:
    try:
        obj = json.loads(text)
        bd = BranchDecomposition(
            host, obj["nodes"],
            tuple(sorted(tuple(sorted(e)) for e in obj["edges"])),
            tuple(sorted((int(k), v) for k, v in obj["leaf_map"].items())),
            frozenset(obj["subdivision_nodes"]))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed decomposition file: {exc}") from exc
    bd.validate()
    return bd


def write_bd(bd: BranchDecomposition, path) -> None:
    with open(path, "w") as fh:
        fh.write(bd_to_json(bd))


def read_bd(path, host: Graph) -> BranchDecomposition:
    with open(path) as fh:
        return bd_from_json(fh.read(), host)


def bd_to_dot(bd: BranchDecomposition, name: str = "T") -> str:
    labels = bd.host.labels
    lines = [f"graph {name} {{"]
    for node in range(bd.nodes):
        v = bd.vertex_of_leaf.get(node)
        if v is None:
            shape = "point" if node not in bd.subdivision_nodes else "diamond"
            lines.append(f"  {node} [shape={shape}];")
        else:
            text = labels[v] if labels is not None else str(v)
            lines.append(f'  {node} [shape=box,label="{text}"];')
    for a, b in bd.tree_edges:
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
