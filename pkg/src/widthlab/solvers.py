"""Exact oracles and the width-parameterized independent-set solver.

All weights are exact rationals (fractions.Fraction end to end); nothing
in here touches floating point, so totals are order-independent and the
oracle-vs-DP equality checks are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .branchdec import BranchDecomposition, exact_width
from .errors import UsageError
from .graphs import Graph, bits_of

ZERO = Fraction(0)


@dataclass(frozen=True)
class WeightedInstance:
    graph: Graph
    weights: tuple[Fraction, ...]

    @staticmethod
    def uniform(g: Graph, value: Fraction = Fraction(1)) -> "WeightedInstance":
        return WeightedInstance(g, tuple([value] * g.n))

    def __post_init__(self):
        if len(self.weights) != self.graph.n:
            raise UsageError("need one weight per vertex")
        if any(w < 0 for w in self.weights):
            raise UsageError("weights must be non-negative")

    def total(self, mask: int) -> Fraction:
        return sum((self.weights[v] for v in bits_of(mask)), ZERO)


@dataclass(frozen=True)
class MwisResult:
    vertices: frozenset[int]
    weight: Fraction


def verify_independent(g: Graph, vertices) -> bool:
    vs = list(vertices)
    return all(not g.has_edge(vs[i], vs[j])
               for i in range(len(vs)) for j in range(i + 1, len(vs)))


def mwis_oracle(inst: WeightedInstance) -> MwisResult:
    """Exact maximum-weight independent set by branch and bound.

    Branch on a maximum-degree vertex (include first); remainders of
    maximum degree <= 1 close in one step; prunes on total remaining
    weight. Desk scale only.
    """
    g = inst.graph
    masks = g.masks
    weights = inst.weights
    best_w = Fraction(-1)
    best_set = 0

    def close_deg1(cand: int) -> tuple[Fraction, int]:
        """Optimal completion when cand induces maximum degree <= 1."""
        total = ZERO
        chosen = 0
        rest = cand
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            nb = masks[v] & cand
            if nb == 0:
                total += weights[v]
                chosen |= low
            else:
                u = (nb & -nb).bit_length() - 1
                rest &= ~(1 << u)
                if weights[u] > weights[v]:
                    total += weights[u]
                    chosen |= 1 << u
                else:
                    total += weights[v]
                    chosen |= low
        return total, chosen

    def rec(cand: int, cur_w: Fraction, cur_set: int) -> None:
        nonlocal best_w, best_set
        if cur_w + inst.total(cand) <= best_w:
            return
        bestv = -1
        bestdeg = -1
        rest = cand
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            d = (masks[v] & cand).bit_count()
            if d > bestdeg:
                bestdeg = d
                bestv = v
        if bestdeg <= 1:
            extra, chosen = close_deg1(cand)
            if cur_w + extra > best_w:
                best_w = cur_w + extra
                best_set = cur_set | chosen
            return
        bit = 1 << bestv
        rec(cand & ~(masks[bestv] | bit), cur_w + weights[bestv], cur_set | bit)
        rec(cand & ~bit, cur_w, cur_set)

    rec(g.full_mask, ZERO, 0)
    return MwisResult(frozenset(bits_of(best_set)), best_w)


# ---------------------------------------------------------------------------
# DP over a rooted branch decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DpStats:
    """Table-size telemetry: one entry count per rooted tree node."""
    table_sizes: tuple[int, ...]

    @property
    def max_table(self) -> int:
        return max(self.table_sizes, default=0)


def mwis_mim_dp(inst: WeightedInstance, bd: BranchDecomposition
                ) -> tuple[MwisResult, DpStats]:
    """Bottom-up dynamic program over the decomposition, with table rows
    indexed by neighbourhood signatures across each cut.

    Two partial solutions below a node are interchangeable when their
    neighbourhoods on the far side of the cut agree, so each table keeps
    one maximum-weight representative per signature; table sizes stay
    n^O(w) for evaluated mim-width w.
    """
    g = inst.graph
    if bd.host is not g and bd.host != g:
        raise UsageError("decomposition does not belong to this graph")
    if g.n == 1:
        return MwisResult(frozenset({0} if inst.weights[0] > 0 else set()),
                          max(inst.weights[0], ZERO)), DpStats((1,))
    masks = g.masks
    full = g.full_mask

    # root by subdividing the lowest tree edge
    root_edge = bd.tree_edges[0]
    adj = {node: set(nbrs) for node, nbrs in enumerate(bd.tree_adj)}
    root = bd.nodes
    adj[root_edge[0]].discard(root_edge[1])
    adj[root_edge[1]].discard(root_edge[0])
    adj[root] = {root_edge[0], root_edge[1]}
    adj[root_edge[0]].add(root)
    adj[root_edge[1]].add(root)

    order = [root]
    parent = {root: -1}
    for x in order:
        for y in sorted(adj[x]):
            if y != parent[x]:
                parent[y] = x
                order.append(y)

    tables: dict[int, dict[int, tuple[Fraction, int]]] = {}
    below: dict[int, int] = {}
    sizes = []
    for node in reversed(order):
        children = [y for y in adj[node] if y != parent[node]]
        if not children:
            v = bd.vertex_of_leaf[node]
            below[node] = 1 << v
            outside = full & ~(1 << v)
            table = {0: (ZERO, 0)}
            sig = masks[v] & outside
            w = inst.weights[v]
            if sig not in table or w > table[sig][0]:
                table[sig] = (w, 1 << v)
            tables[node] = table
        else:
            vt = 0
            for c in children:
                vt |= below[c]
            below[node] = vt
            outside = full & ~vt
            if len(children) == 1:
                src = tables[children[0]]
                table = {}
                for sig, (w, x) in src.items():
                    nsig = sig & outside
                    if nsig not in table or w > table[nsig][0]:
                        table[nsig] = (w, x)
            else:
                t1 = tables[children[0]]
                t2 = tables[children[1]]
                table = {}
                for sig1, (w1, x1) in t1.items():
                    for sig2, (w2, x2) in t2.items():
                        if sig1 & x2 or sig2 & x1:
                            continue
                        nsig = (sig1 | sig2) & outside
                        w = w1 + w2
                        if nsig not in table or w > table[nsig][0]:
                            table[nsig] = (w, x1 | x2)
            tables[node] = table
        sizes.append(len(tables[node]))
        for c in children:
            del tables[c]
    final = tables[root]
    assert list(final) == [0]
    w, x = final[0]
    return MwisResult(frozenset(bits_of(x)), w), DpStats(tuple(sizes))


# ---------------------------------------------------------------------------
# List colouring
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ListAssignment:
    k: int
    lists: tuple[frozenset[int], ...]

    @staticmethod
    def full(g: Graph, k: int) -> "ListAssignment":
        return ListAssignment(k, tuple([frozenset(range(1, k + 1))] * g.n))

    def __post_init__(self):
        if self.k < 1:
            raise UsageError("need k >= 1 colours")
        for i, lst in enumerate(self.lists):
            if not all(1 <= c <= self.k for c in lst):
                raise UsageError(f"list of vertex {i} leaves the range 1..{self.k}")


def list_colouring_oracle(g: Graph, assignment: ListAssignment
                          ) -> tuple[int, ...] | None:
    """Backtracking search for a proper colouring respecting the lists;
    vertices in order of ascending list size, colours ascending."""
    if len(assignment.lists) != g.n:
        raise UsageError("need one list per vertex")
    order = sorted(range(g.n), key=lambda v: (len(assignment.lists[v]), v))
    colour = [0] * g.n

    def rec(i: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        for c in sorted(assignment.lists[v]):
            if all(colour[u] != c for u in g.neighbours[v]):
                colour[v] = c
                if rec(i + 1):
                    return True
                colour[v] = 0
        return False

    return tuple(colour) if rec(0) else None


def verify_colouring(g: Graph, assignment: ListAssignment,
                     colour: tuple[int, ...]) -> bool:
    if len(colour) != g.n:
        return False
    if any(colour[v] not in assignment.lists[v] for v in range(g.n)):
        return False
    return all(colour[u] != colour[v] for u, v in g.edges)


def simwidth_oracle(g: Graph, cap: int | None = None) -> int:
    """Exact sim-width via the exhaustive search."""
    return exact_width(g, "sim", cap=cap)[0]
