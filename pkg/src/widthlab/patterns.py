"""Forbidden-induced-subgraph catalogue and containment testing.

Every family claim in the generators module rests on `is_free`, so the
induced-embedding search is built for verification work: deterministic
witnesses, component-by-component embedding with anticompleteness pruning
between components (the graphs under test are dense, so the vertices
compatible with an already-placed component collapse quickly), and a
separately-coded linear-forest checker used as a cross-check.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .errors import UsageError
from .graphs import Graph, bits_of, build_named, complement, disjoint_union

# ---------------------------------------------------------------------------
# Pattern catalogue
# ---------------------------------------------------------------------------

KIND_CLIQUE = "clique"
KIND_EDGELESS = "edgeless"
KIND_LINEAR_FOREST = "linear_forest"
KIND_CO_BICLIQUE_UNIVERSAL = "co_biclique_universal"
KIND_SUBDIVIDED_STAR = "subdivided_star"
KIND_MATCHED_CLIQUES = "matched_cliques"
KIND_MATCHED_CLIQUE_STABLE = "matched_clique_stable"
KIND_EXPLICIT = "explicit"


@dataclass(frozen=True)
class PatternSpec:
    """One forbidden induced subgraph, given by kind and parameters."""

    kind: str
    params: tuple[int, ...] = ()
    graph: Graph | None = None
    name: str | None = None

    def __repr__(self) -> str:
        return f"PatternSpec({format_pattern(self)!r})"


def clique(r: int) -> PatternSpec:
    if r < 1:
        raise UsageError("clique needs r >= 1")
    return PatternSpec(KIND_CLIQUE, (r,))


def edgeless(r: int) -> PatternSpec:
    if r < 1:
        raise UsageError("edgeless needs r >= 1")
    return PatternSpec(KIND_EDGELESS, (r,))


def linear_forest(s: int, t: int, u: int) -> PatternSpec:
    """s*P1 + t*P2 + u*P3. Collapses to the edgeless kind when t = u = 0."""
    if s < 0 or t < 0 or u < 0 or s + t + u == 0:
        raise UsageError("linear forest needs non-negative s,t,u with s+t+u >= 1")
    if t == 0 and u == 0:
        return edgeless(s)
    return PatternSpec(KIND_LINEAR_FOREST, (s, t, u))


def co_biclique_universal(s: int, t: int) -> PatternSpec:
    """Complement of K_{s,t} + P1: a universal vertex plus two mutually
    anticomplete cliques of sizes s and t."""
    if s < 1 or t < 1:
        raise UsageError("co_biclique_universal needs s,t >= 1")
    return PatternSpec(KIND_CO_BICLIQUE_UNIVERSAL, (s, t))


def subdivided_star(s: int) -> PatternSpec:
    """K_{1,s} with every edge subdivided once."""
    if s < 1:
        raise UsageError("subdivided_star needs s >= 1")
    return PatternSpec(KIND_SUBDIVIDED_STAR, (s,))


def matched_cliques(t: int) -> PatternSpec:
    """Two disjoint K_t joined by a perfect matching."""
    if t < 1:
        raise UsageError("matched_cliques needs t >= 1")
    return PatternSpec(KIND_MATCHED_CLIQUES, (t,))


def matched_clique_stable(t: int) -> PatternSpec:
    """K_t and an independent set of size t joined by a perfect matching."""
    if t < 1:
        raise UsageError("matched_clique_stable needs t >= 1")
    return PatternSpec(KIND_MATCHED_CLIQUE_STABLE, (t,))


def explicit(graph: Graph, name: str | None = None) -> PatternSpec:
    return PatternSpec(KIND_EXPLICIT, (), graph, name)


def realize(p: PatternSpec) -> Graph:
    """Concrete graph of a pattern, with documented deterministic numbering."""
    if p.kind == KIND_CLIQUE:
        return build_named("K", [p.params[0]])
    if p.kind == KIND_EDGELESS:
        return Graph.from_edges(p.params[0], [])
    if p.kind == KIND_LINEAR_FOREST:
        # P3 blocks first, then P2 blocks, then isolated vertices
        s, t, u = p.params
        edges = []
        base = 0
        for _ in range(u):
            edges += [(base, base + 1), (base + 1, base + 2)]
            base += 3
        for _ in range(t):
            edges.append((base, base + 1))
            base += 2
        return Graph.from_edges(base + s, edges)
    if p.kind == KIND_CO_BICLIQUE_UNIVERSAL:
        # vertex 0 universal, clique 1..s, clique s+1..s+t
        s, t = p.params
        biclique_plus_p1 = disjoint_union(build_named("Kst", [s, t]),
                                          Graph.from_edges(1, []))
        g = complement(biclique_plus_p1)
        # renumber so the universal vertex comes first
        n = g.n
        perm = [0] * n
        perm[n - 1] = 0
        for v in range(n - 1):
            perm[v] = v + 1
        return g.relabel(perm)
    if p.kind == KIND_SUBDIVIDED_STAR:
        # 0 centre, 1..s subdivision vertices, s+1..2s outer leaves
        s = p.params[0]
        edges = []
        for i in range(1, s + 1):
            edges += [(0, i), (i, s + i)]
        return Graph.from_edges(2 * s + 1, edges)
    if p.kind == KIND_MATCHED_CLIQUES:
        t = p.params[0]
        edges = [(i, j) for i in range(t) for j in range(i + 1, t)]
        edges += [(t + i, t + j) for i in range(t) for j in range(i + 1, t)]
        edges += [(i, t + i) for i in range(t)]
        return Graph.from_edges(2 * t, edges)
    if p.kind == KIND_MATCHED_CLIQUE_STABLE:
        t = p.params[0]
        edges = [(i, j) for i in range(t) for j in range(i + 1, t)]
        edges += [(i, t + i) for i in range(t)]
        return Graph.from_edges(2 * t, edges)
    if p.kind == KIND_EXPLICIT:
        if p.graph is None:
            raise UsageError("explicit pattern without a graph")
        return p.graph
    raise UsageError(f"unknown pattern kind {p.kind!r}")


# ---------------------------------------------------------------------------
# Mini-language
# ---------------------------------------------------------------------------

_RE_CLIQUE = re.compile(r"^K(\d+)$")
_RE_CO = re.compile(r"^co\(K\[(\d+),(\d+)\]\+P1\)$")
_RE_BOX = re.compile(r"^K(\d+)box([KS])(\d+)$")
_RE_SUBDIV = re.compile(r"^K1-(\d+)-subdiv$")
_RE_PTERM = re.compile(r"^(\d*)P([123])$")
_RE_PATH = re.compile(r"^P(\d+)$")
_RE_CYCLE = re.compile(r"^C(\d+)$")


def parse_pattern(text: str) -> PatternSpec:
    """Parse the CLI pattern mini-language.

    Grammar: `K4` (clique), `3P1` (edgeless), sums of P1/P2/P3 terms with
    optional multipliers like `2P3+P2+P1` (linear forest), `co(K[3,4]+P1)`,
    `K3boxK3`, `K3boxS3`, `K1-3-subdiv`, and explicit `P5` / `C4`.
    """
    text = text.strip()
    m = _RE_CO.match(text)
    if m:
        return co_biclique_universal(int(m.group(1)), int(m.group(2)))
    m = _RE_BOX.match(text)
    if m:
        a, kind, b = int(m.group(1)), m.group(2), int(m.group(3))
        if a != b:
            raise UsageError(f"matched pattern sizes must agree: {text!r}")
        return matched_cliques(a) if kind == "K" else matched_clique_stable(a)
    m = _RE_SUBDIV.match(text)
    if m:
        return subdivided_star(int(m.group(1)))
    m = _RE_CLIQUE.match(text)
    if m:
        return clique(int(m.group(1)))
    terms = text.split("+")
    counts = {1: 0, 2: 0, 3: 0}
    plain = True
    for term in terms:
        tm = _RE_PTERM.match(term.strip())
        if tm is None:
            plain = False
            break
        mult = int(tm.group(1)) if tm.group(1) else 1
        counts[int(tm.group(2))] += mult
    if plain and sum(counts.values()) > 0:
        return linear_forest(counts[1], counts[2], counts[3])
    if len(terms) == 1:
        m = _RE_PATH.match(text)
        if m:
            return explicit(build_named("P", [int(m.group(1))]), text)
        m = _RE_CYCLE.match(text)
        if m:
            return explicit(build_named("C", [int(m.group(1))]), text)
    raise UsageError(f"cannot parse pattern {text!r}")


def format_pattern(p: PatternSpec) -> str:
    if p.kind == KIND_CLIQUE:
        return f"K{p.params[0]}"
    if p.kind == KIND_EDGELESS:
        r = p.params[0]
        return f"{r}P1" if r > 1 else "P1"
    if p.kind == KIND_LINEAR_FOREST:
        s, t, u = p.params
        parts = []
        for count, size in ((u, 3), (t, 2), (s, 1)):
            if count == 1:
                parts.append(f"P{size}")
            elif count > 1:
                parts.append(f"{count}P{size}")
        return "+".join(parts)
    if p.kind == KIND_CO_BICLIQUE_UNIVERSAL:
        s, t = p.params
        return f"co(K[{s},{t}]+P1)"
    if p.kind == KIND_MATCHED_CLIQUES:
        t = p.params[0]
        return f"K{t}boxK{t}"
    if p.kind == KIND_MATCHED_CLIQUE_STABLE:
        t = p.params[0]
        return f"K{t}boxS{t}"
    if p.kind == KIND_SUBDIVIDED_STAR:
        return f"K1-{p.params[0]}-subdiv"
    if p.kind == KIND_EXPLICIT:
        if p.name:
            return p.name
        return f"explicit(n={p.graph.n},m={p.graph.m})"
    raise UsageError(f"unknown pattern kind {p.kind!r}")


def parse_pattern_list(text: str) -> list[PatternSpec]:
    """Comma-separated list of patterns (commas never occur inside one)."""
    return [parse_pattern(part) for part in text.split(",") if part.strip()]


# ---------------------------------------------------------------------------
# Induced-containment search
# ---------------------------------------------------------------------------

def _component_order(p: Graph) -> tuple[list[int], list[int]]:
    """Static embedding order: components by decreasing size (ties by
    smallest vertex), BFS inside each from its smallest vertex.

    Returns (order, comp_id per position).
    """
    comps = p.components()
    comps.sort(key=lambda c: (-len(c), c[0]))
    order: list[int] = []
    comp_of: list[int] = []
    for ci, comp in enumerate(comps):
        seen = {comp[0]}
        queue = [comp[0]]
        while queue:
            v = queue.pop(0)
            order.append(v)
            comp_of.append(ci)
            for w in p.neighbours[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order, comp_of


def _canonical_small(p: Graph) -> tuple | None:
    """Exact canonical form by permutation minimum; None above 6 vertices."""
    if p.n > 6:
        return None
    best = None
    verts = range(p.n)
    for perm in permutations(verts):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in p.edges))
        if best is None or key < best:
            best = key
    return (p.n, best)


def contains_induced(g: Graph, p: PatternSpec) -> tuple[int, ...] | None:
    """First induced embedding of the pattern in lexicographic order of the
    candidate sequence, as a map pattern vertex -> host vertex, or None."""
    pg = realize(p)
    if pg.n == 0:
        return ()
    if pg.n > g.n:
        return None

    order, comp_of = _component_order(pg)
    npat = pg.n
    # adjacency requirements towards earlier vertices in the order
    earlier_adj: list[list[int]] = [[] for _ in range(npat)]
    earlier_nonadj: list[list[int]] = [[] for _ in range(npat)]
    for i in range(npat):
        for j in range(i):
            if comp_of[i] == comp_of[j] and pg.has_edge(order[i], order[j]):
                earlier_adj[i].append(j)
            else:
                earlier_nonadj[i].append(j)

    # symmetry breaking between isomorphic consecutive components: force the
    # image of the later component root to exceed the earlier root's image
    comps_sorted = sorted(pg.components(), key=lambda c: (-len(c), c[0]))
    comp_keys = []
    for comp in comps_sorted:
        sub = _induced(pg, comp)
        comp_keys.append(_canonical_small(sub))
    root_pos = {}
    for pos in range(npat):
        if comp_of[pos] not in root_pos:
            root_pos[comp_of[pos]] = pos
    min_exceeds: list[int] = [-1] * npat  # position whose image must be exceeded
    for ci in range(1, len(comps_sorted)):
        if comp_keys[ci] is not None and comp_keys[ci] == comp_keys[ci - 1]:
            min_exceeds[root_pos[ci]] = root_pos[ci - 1]

    deg_ok = [0] * npat
    full = g.full_mask
    for i in range(npat):
        d = pg.degree(order[i])
        m = 0
        for v in range(g.n):
            if g.degree(v) >= d:
                m |= 1 << v
        deg_ok[i] = m

    images = [0] * npat
    used = 0
    masks = g.masks

    def rec(i: int) -> bool:
        nonlocal used
        if i == npat:
            return True
        cand = deg_ok[i] & ~used
        for j in earlier_adj[i]:
            cand &= masks[images[j]]
        for j in earlier_nonadj[i]:
            cand &= ~masks[images[j]]
        if min_exceeds[i] >= 0:
            cand &= ~((1 << (images[min_exceeds[i]] + 1)) - 1)
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            images[i] = v
            used |= low
            if rec(i + 1):
                return True
            used ^= low
        return False

    if rec(0):
        phi = [0] * npat
        for pos, pv in enumerate(order):
            phi[pv] = images[pos]
        return tuple(phi)
    return None


def _induced(g: Graph, vertices) -> Graph:
    vs = sorted(vertices)
    pos = {v: i for i, v in enumerate(vs)}
    return Graph.from_edges(len(vs), ((pos[u], pos[v]) for u, v in g.edges
                                      if u in pos and v in pos))


def verify_embedding(g: Graph, p: PatternSpec, phi: tuple[int, ...]) -> bool:
    """Re-check an embedding edge by edge (certificates must verify)."""
    pg = realize(p)
    if len(phi) != pg.n or len(set(phi)) != pg.n:
        return False
    for u in range(pg.n):
        for v in range(u + 1, pg.n):
            if pg.has_edge(u, v) != g.has_edge(phi[u], phi[v]):
                return False
    return True


@dataclass(frozen=True)
class FreenessReport:
    free: bool
    witness_pattern: PatternSpec | None = None
    witness_embedding: tuple[int, ...] | None = None


def is_free(g: Graph, specs) -> FreenessReport:
    """Check that no pattern embeds; if one does, return it as a certificate."""
    for p in specs:
        phi = contains_induced(g, p)
        if phi is not None:
            return FreenessReport(False, p, phi)
    return FreenessReport(True)


# ---------------------------------------------------------------------------
# Specialised linear-forest checker (cross-check for the generic engine)
# ---------------------------------------------------------------------------

def contains_linear_forest(g: Graph, s: int, t: int, u: int) -> bool:
    """Does g contain sP1 + tP2 + uP3 induced? Places P3 components, then
    P2, then P1, shrinking the allowed set to vertices anticomplete to
    everything placed; identical components are forced into increasing
    order of their smallest image."""
    masks = g.masks

    def closed(v: int) -> int:
        return masks[v] | (1 << v)

    def place(allowed: int, s_: int, t_: int, u_: int, floor3: int, floor2: int,
              floor1: int) -> bool:
        if u_ > 0:
            # enumerate induced paths x-y-z by their middle vertex y
            for y in bits_of(allowed):
                nb = bits_of(allowed & masks[y])
                for i in range(len(nb)):
                    for j in range(i + 1, len(nb)):
                        x, z = nb[i], nb[j]
                        if g.has_edge(x, z):
                            continue
                        lowest = min(x, y)
                        if lowest < floor3:
                            continue
                        nxt = allowed & ~(closed(x) | closed(y) | closed(z))
                        if place(nxt, s_, t_, u_ - 1, lowest + 1, floor2, floor1):
                            return True
            return False
        if t_ > 0:
            rest = allowed & ~((1 << floor2) - 1) if floor2 else allowed
            while rest:
                low = rest & -rest
                a = low.bit_length() - 1
                rest ^= low
                for b in bits_of(allowed & masks[a]):
                    if b < a:
                        continue
                    nxt = allowed & ~(closed(a) | closed(b))
                    if place(nxt, s_, t_ - 1, u_, floor3, a + 1, floor1):
                        return True
            return False
        if s_ > 0:
            rest = allowed & ~((1 << floor1) - 1) if floor1 else allowed
            while rest:
                low = rest & -rest
                a = low.bit_length() - 1
                rest ^= low
                nxt = allowed & ~closed(a)
                if place(nxt, s_ - 1, t_, u_, floor3, floor2, a + 1):
                    return True
            return False
        return True

    return place(g.full_mask, s, t, u, 0, 0, 0)


# ---------------------------------------------------------------------------
# Independence and clique numbers
# ---------------------------------------------------------------------------

def independence_number(g: Graph) -> int:
    """Exact alpha(G) by branch and bound (desk scale)."""
    from . import _kernels
    return _kernels.pykernels.mis_size(list(g.masks), g.full_mask)


def clique_number(g: Graph) -> int:
    return independence_number(complement(g))


# ---------------------------------------------------------------------------
# Linear-forest containment at the spec level (no graphs involved)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def lf_contains(big: tuple[int, int, int], small: tuple[int, int, int]) -> bool:
    """Is small=(s,t,u) an induced subgraph of big=(s',t',u') as linear
    forests? (sP1+tP2+uP3 embeds into s'P1+t'P2+u'P3.)

    Each P3 target hosts a P3, a P2, two P1 or one P1; each P2 target a P2
    or a P1. Filling P2 targets with P2 components first is optimal since a
    P3 target converts to two P1 slots instead of one.
    """
    s, t, u = small
    sb, tb, ub = big
    if u > ub:
        return False
    free3 = ub - u
    t_into_p2 = min(t, tb)
    t_rest = t - t_into_p2
    if t_rest > free3:
        return False
    p1_capacity = sb + (tb - t_into_p2) + 2 * (free3 - t_rest)
    return s <= p1_capacity
