"""Pattern-occurrence graphs and independent packings.

An occurrence is a subgraph of the host isomorphic to one of the given
connected patterns, identified by its vertex set together with its edge
subset (two different shapes on the same vertices are different
occurrences; they conflict in the occurrence graph either way, so packing
values are unaffected). Occurrences are adjacent when they share a vertex
or an edge of the host joins them, which turns maximum-weight independent
packing into maximum-weight independent set on the occurrence graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .branchdec import BranchDecomposition, TreeBuilder
from .errors import UsageError
from .graphs import Graph, mask_of
from .solvers import MwisResult, WeightedInstance, mwis_mim_dp, mwis_oracle

DEFAULT_PATTERN_CAP = 4


@dataclass(frozen=True)
class Occurrence:
    vertices: tuple[int, ...]               # sorted
    edges: tuple[tuple[int, int], ...]      # sorted pairs, sorted
    pattern_index: int

    @property
    def anchor(self) -> int:
        return self.vertices[0]


@dataclass(frozen=True)
class OccurrenceIndex:
    patterns: tuple[Graph, ...]
    occurrences: tuple[Occurrence, ...]

    def groups(self) -> dict[int, list[int]]:
        """Anchor vertex -> occurrence ids; each group is a clique in the
        occurrence graph because its members share the anchor."""
        out: dict[int, list[int]] = {}
        for i, occ in enumerate(self.occurrences):
            out.setdefault(occ.anchor, []).append(i)
        return out


@dataclass(frozen=True)
class HGraphResult:
    hgraph: Graph
    index: OccurrenceIndex


def build_hgraph(g: Graph, patterns, cap: int = DEFAULT_PATTERN_CAP) -> HGraphResult:
    """Occurrence graph over all subgraphs isomorphic to a pattern.

    Enumerates vertex subsets up to the largest pattern size and tries all
    bijections onto each same-sized pattern, keeping the distinct mapped
    edge sets.
    """
    pats = []
    for p in patterns:
        if p.n == 0:
            raise UsageError("patterns must be non-null")
        if not p.is_connected():
            raise UsageError("patterns must be connected")
        if p.n > cap:
            raise UsageError(f"pattern with {p.n} vertices exceeds cap {cap}")
        if p not in pats:
            pats.append(p)
    if not pats:
        raise UsageError("need at least one pattern")
    found: dict[tuple, int] = {}
    sizes = sorted({p.n for p in pats})
    for size in sizes:
        same = [(i, p) for i, p in enumerate(pats) if p.n == size]
        for subset in combinations(range(g.n), size):
            for i, p in same:
                for perm in permutations(range(size)):
                    mapped = []
                    ok = True
                    for u, v in p.edges:
                        a, b = subset[perm[u]], subset[perm[v]]
                        if not g.has_edge(a, b):
                            ok = False
                            break
                        mapped.append((a, b) if a < b else (b, a))
                    if ok:
                        key = (subset, tuple(sorted(set(mapped))))
                        found.setdefault(key, i)
    occs = tuple(Occurrence(vs, es, found[(vs, es)])
                 for vs, es in sorted(found))
    masks = [mask_of(o.vertices) for o in occs]
    closed = [m | _nbr_mask(g, m) for m in masks]
    hedges = [(i, j) for i in range(len(occs)) for j in range(i + 1, len(occs))
              if closed[i] & masks[j]]
    hg = Graph.from_edges(len(occs), hedges)
    return HGraphResult(hg, OccurrenceIndex(tuple(pats), occs))


def _nbr_mask(g: Graph, m: int) -> int:
    out = 0
    mm = m
    while mm:
        low = mm & -mm
        out |= g.masks[low.bit_length() - 1]
        mm ^= low
    return out


# ---------------------------------------------------------------------------
# Decomposition transfer
# ---------------------------------------------------------------------------

def transfer_decomposition(g: Graph, bd: BranchDecomposition,
                           hg: HGraphResult) -> BranchDecomposition:
    """Decomposition of the occurrence graph from one of the host.

    Each host leaf holding anchor groups grows a caterpillar over its
    group (through a subdivision node when the group has two or more
    members); anchor-free leaves are trimmed afterwards. The result's
    sim-width never exceeds the input decomposition's sim-width.
    """
    if hg.hgraph.n <= 1:
        raise UsageError("transfer needs an occurrence graph with > 1 vertex")
    if bd.host != g:
        raise UsageError("decomposition does not belong to this graph")
    groups = hg.index.groups()
    builder = TreeBuilder()
    node_map = {}
    for node in range(bd.nodes):
        node_map[node] = builder.add_node()
    for a, b in bd.tree_edges:
        builder.add_edge(node_map[a], node_map[b])
    for node in bd.subdivision_nodes:
        builder.mark_degree2(node_map[node])

    empty_leaves = []
    for node, v in bd.leaf_entries:
        group = groups.get(v, [])
        t_node = node_map[node]
        if not group:
            empty_leaves.append(t_node)
            continue
        backbone, leaves = builder.caterpillar(len(group))
        for i, occ_id in enumerate(group):
            builder.set_leaf(leaves[i], occ_id)
        if len(group) == 1:
            x_t = backbone[0]
            builder.mark_degree2(x_t)
        else:
            x_t = builder.subdivide(backbone[0], backbone[1])
        builder.add_edge(x_t, t_node)
        builder.mark_degree2(t_node)
    for t_node in empty_leaves:
        builder.trim_leaf(t_node)
    return builder.build(hg.hgraph)


# ---------------------------------------------------------------------------
# Independent packing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PackingResult:
    occurrence_ids: tuple[int, ...]
    occurrences: tuple[Occurrence, ...]
    weight: Fraction


def solve_packing(g: Graph, patterns, weights=None,
                  hg: HGraphResult | None = None,
                  bd_of_hgraph: BranchDecomposition | None = None
                  ) -> tuple[PackingResult, HGraphResult]:
    """Maximum-weight independent packing via independent set on the
    occurrence graph: the MWIS oracle by default, or the width-driven DP
    when a decomposition of the occurrence graph is supplied."""
    if hg is None:
        hg = build_hgraph(g, patterns)
    n_occ = hg.hgraph.n
    if weights is None:
        wvec = tuple([Fraction(1)] * n_occ)
    else:
        try:
            wvec = tuple(Fraction(weights[i]) for i in range(n_occ))
        except (KeyError, IndexError) as exc:
            raise UsageError(f"missing weight for occurrence {exc}") from exc
    inst = WeightedInstance(hg.hgraph, wvec)
    if bd_of_hgraph is not None:
        res, _ = mwis_mim_dp(inst, bd_of_hgraph)
    else:
        res = mwis_oracle(inst)
    ids = tuple(sorted(res.vertices))
    chosen = tuple(hg.index.occurrences[i] for i in ids)
    packing = PackingResult(ids, chosen, res.weight)
    if not verify_packing(g, hg, packing):
        raise UsageError("internal packing certificate failed to verify")
    return packing, hg


def verify_packing(g: Graph, hg: HGraphResult, packing: PackingResult) -> bool:
    """Re-check the certificate: chosen subgraphs pairwise vertex-disjoint
    and anticomplete, each matching its pattern's shape."""
    occs = packing.occurrences
    for occ in occs:
        p = hg.index.patterns[occ.pattern_index]
        if len(occ.vertices) != p.n or len(occ.edges) != p.m:
            return False
        for a, b in occ.edges:
            if not g.has_edge(a, b):
                return False
    for i in range(len(occs)):
        for j in range(i + 1, len(occs)):
            mi = mask_of(occs[i].vertices)
            mj = mask_of(occs[j].vertices)
            if mi & mj or _nbr_mask(g, mi) & mj:
                return False
    return True


def brute_force_packing(g: Graph, patterns, weights=None,
                        hg: HGraphResult | None = None) -> Fraction:
    """Independent oracle for packing values: memoized scan over the
    occurrence list with a blocked-vertex mask, never touching the
    occurrence graph's adjacency or any independent-set machinery."""
    if hg is None:
        hg = build_hgraph(g, patterns)
    occs = hg.index.occurrences
    if weights is None:
        wvec = [Fraction(1)] * len(occs)
    else:
        wvec = [Fraction(weights[i]) for i in range(len(occs))]
    footprint = []
    for occ in occs:
        m = mask_of(occ.vertices)
        footprint.append((m, m | _nbr_mask(g, m)))
    memo: dict[tuple[int, int], Fraction] = {}

    def best(i: int, blocked: int) -> Fraction:
        if i == len(occs):
            return Fraction(0)
        key = (i, blocked)
        if key in memo:
            return memo[key]
        out = best(i + 1, blocked)
        m, closed = footprint[i]
        if not (m & blocked):
            take = wvec[i] + best(i + 1, blocked | closed)
            if take > out:
                out = take
        memo[key] = out
        return out

    return best(0, 0)
