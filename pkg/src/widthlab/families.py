"""Generators for the unbounded-width graph families, with their freeness
claims attached.

Every generator is deterministic (byte-identical files across runs) and
carries grid coordinates in the vertex labels, 1-based to match the
congruence rules, converted to 0-based ids only at the file boundary.

The 3- and 4-colourings of walls are residue formulas; figures being
non-normative, they are validated by the exact neighbourhood properties
the arguments need: properness, no vertex with three same-coloured
neighbours (k=3), and no vertex with two same-coloured neighbours (k=4).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import InvariantViolation, UsageError
from .graphs import Graph, add_edges, build_named
from .patterns import (PatternSpec, clique, co_biclique_universal, edgeless,
                       format_pattern, is_free, linear_forest)

# ---------------------------------------------------------------------------
# Elementary walls
# ---------------------------------------------------------------------------

def elementary_wall(h: int, r: int) -> Graph:
    """Height-h width-r wall: the h x 2r grid loses the vertical edges
    whose top row index disagrees with the column parity, then degree-1
    vertices; survivors are renumbered row-major with '(i,j)' labels."""
    if h < 1 or r < 1:
        raise UsageError("wall needs h, r >= 1")
    cols = 2 * r
    coords = [(i, j) for i in range(1, h + 1) for j in range(1, cols + 1)]
    index = {c: k for k, c in enumerate(coords)}
    edges = []
    for (i, j) in coords:
        if j < cols:
            edges.append((index[(i, j)], index[(i, j + 1)]))
        if i < h and i % 2 == j % 2:
            edges.append((index[(i, j)], index[(i + 1, j)]))
    grid = Graph.from_edges(len(coords), edges)
    keep = [index[c] for c in coords if grid.degree(index[c]) != 1]
    pos = {v: k for k, v in enumerate(keep)}
    kept_coords = [coords[v] for v in keep]
    out_edges = [(pos[u], pos[v]) for u, v in grid.edges if u in pos and v in pos]
    return Graph.from_edges(len(keep), out_edges,
                            labels=[f"{i},{j}" for i, j in kept_coords])


def wall_coords(w: Graph) -> list[tuple[int, int]]:
    if w.labels is None:
        raise UsageError("graph carries no grid coordinates")
    out = []
    for lab in w.labels:
        i, j = lab.split(",")
        out.append((int(i), int(j)))
    return out


@dataclass(frozen=True)
class ColouredGraph:
    graph: Graph
    colouring: tuple[int, ...]
    k: int


def wall_colouring(w: Graph, k: int) -> ColouredGraph:
    """Proper k-colouring of a wall by coordinate residues.

    k=2: (i+j) mod 2 (the bipartition). k=3: (i+j) mod 3, which also never
    gives a vertex three same-coloured neighbours. k=4: (2i+j) mod 4,
    under which every neighbourhood is rainbow.
    """
    if k not in (2, 3, 4):
        raise UsageError("wall colourings exist for k in {2,3,4}")
    coords = wall_coords(w)
    if k == 2:
        colours = tuple((i + j) % 2 for i, j in coords)
    elif k == 3:
        colours = tuple((i + j) % 3 for i, j in coords)
    else:
        colours = tuple((2 * i + j) % 4 for i, j in coords)
    cg = ColouredGraph(w, colours, k)
    _validate_wall_colouring(cg)
    return cg


def _validate_wall_colouring(cg: ColouredGraph) -> None:
    g, colours, k = cg.graph, cg.colouring, cg.k
    for u, v in g.edges:
        if colours[u] == colours[v]:
            raise InvariantViolation(f"colouring not proper on edge ({u},{v})")
    if k >= 3:
        limit = 2 if k == 3 else 1
        for v in range(g.n):
            seen: dict[int, int] = {}
            for u in g.neighbours[v]:
                seen[colours[u]] = seen.get(colours[u], 0) + 1
            if seen and max(seen.values()) > limit:
                raise InvariantViolation(
                    f"vertex {v} has {max(seen.values())} neighbours of one "
                    f"colour; the {k}-colouring argument needs <= {limit}")


def complete_colour_classes(cg: ColouredGraph) -> Graph:
    """Make every colour class a clique; cross-class adjacency unchanged."""
    _validate_wall_colouring(cg)
    g = cg.graph
    extra = [(u, v) for u in range(g.n) for v in range(u + 1, g.n)
             if cg.colouring[u] == cg.colouring[v] and not g.has_edge(u, v)]
    return add_edges(g, extra)


# ---------------------------------------------------------------------------
# Brick-pattern grids and their completions
# ---------------------------------------------------------------------------

def wn_graph(n: int) -> Graph:
    """2n x 2n grid minus the left-edges of odd-parity vertices: every
    vertex (i,j) with i+j odd loses its edge towards (i,j-1)."""
    if n < 1:
        raise UsageError("need n >= 1")
    side = 2 * n
    coords = [(i, j) for i in range(1, side + 1) for j in range(1, side + 1)]
    index = {c: k for k, c in enumerate(coords)}
    edges = []
    for (i, j) in coords:
        if i < side:
            edges.append((index[(i, j)], index[(i + 1, j)]))
        if j < side and (i + (j + 1)) % 2 != 1:
            edges.append((index[(i, j)], index[(i, j + 1)]))
    return Graph.from_edges(len(coords), edges,
                            labels=[f"{i},{j}" for i, j in coords])


_RED_CLASSES = ("A", "B", "C")
_BLUE_CLASSES = ("D", "E", "F")


def _wn_class(i: int, j: int) -> str:
    red = (i + j) % 2 == 0
    residue = i % 3  # 1 -> A/D, 2 -> B/E, 0 -> C/F
    order = {1: 0, 2: 1, 0: 2}[residue]
    return (_RED_CLASSES if red else _BLUE_CLASSES)[order]


def w5_family(n: int) -> Graph:
    """Brick grid with its six residue classes pairwise completed inside
    each colour: A,B,C (even parity) mutually complete, likewise D,E,F."""
    base = wn_graph(n)
    coords = wall_coords(base)
    cls = [_wn_class(i, j) for i, j in coords]
    # the argument needs: classes independent, and each vertex adjacent to
    # at most one vertex of each opposite-colour class
    for u, v in base.edges:
        if cls[u] == cls[v]:
            raise InvariantViolation("residue class not independent")
    for v in range(base.n):
        counts: dict[str, int] = {}
        for u in base.neighbours[v]:
            counts[cls[u]] = counts.get(cls[u], 0) + 1
        if counts and max(counts.values()) > 1:
            raise InvariantViolation(
                f"vertex {v} sees a class twice before completion")
    red = set(_RED_CLASSES)
    extra = [(u, v) for u in range(base.n) for v in range(u + 1, base.n)
             if cls[u] != cls[v] and (cls[u] in red) == (cls[v] in red)
             and not base.has_edge(u, v)]
    return add_edges(base, extra)


def w4_structure(n: int) -> tuple[Graph, list[str]]:
    """Subdivide every edge of the brick grid (coordinates doubled, the new
    vertex at the midpoint) and classify: X/Y are the original vertices by
    coordinate-sum residue mod 4, A/B/C the subdivision vertices by their
    first coordinate mod 3."""
    base = wn_graph(n)
    coords = wall_coords(base)
    doubled = [(2 * i, 2 * j) for i, j in coords]
    verts = list(doubled)
    edges = []
    for u, v in base.edges:
        (iu, ju), (iv, jv) = doubled[u], doubled[v]
        mid = ((iu + iv) // 2, (ju + jv) // 2)
        verts.append(mid)
        w = len(verts) - 1
        edges.append((u, w))
        edges.append((w, v))
    cls = []
    for (i, j) in verts:
        if (i + j) % 2 == 0:
            cls.append("X" if (i + j) % 4 == 2 else "Y")
        else:
            cls.append({1: "A", 2: "B", 0: "C"}[i % 3])
    g = Graph.from_edges(len(verts), edges,
                         labels=[f"{i},{j}" for i, j in verts])
    _check_w4_residues(g, cls)
    return g, cls


def _check_w4_residues(g: Graph, cls: list[str]) -> None:
    """Same-class subdivision vertices differ by a multiple of 3 in the
    first coordinate; at equal first coordinate the second differs evenly."""
    coords = wall_coords(g)
    for key in ("A", "B", "C"):
        members = [v for v in range(g.n) if cls[v] == key]
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                (i1, j1), (i2, j2) = coords[members[a]], coords[members[b]]
                if abs(i1 - i2) % 3 != 0:
                    raise InvariantViolation("class residue rule broken")
                if i1 == i2 and abs(j1 - j2) % 2 != 0:
                    raise InvariantViolation("same-row parity rule broken")


def w4_family(n: int) -> Graph:
    """Completion of the subdivided brick grid: X complete to Y, and every
    cross pair among A,B,C joined unless the two vertices flank a common
    original vertex (same second coordinate, first coordinates 2 apart)."""
    g, cls = w4_structure(n)
    coords = wall_coords(g)
    extra = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            cu, cv = cls[u], cls[v]
            if {cu, cv} == {"X", "Y"}:
                if not g.has_edge(u, v):
                    extra.append((u, v))
            elif cu != cv and cu in "ABC" and cv in "ABC":
                (i1, j1), (i2, j2) = coords[u], coords[v]
                if j1 == j2 and abs(i1 - i2) == 2:
                    continue
                if not g.has_edge(u, v):
                    extra.append((u, v))
    return add_edges(g, extra)


# ---------------------------------------------------------------------------
# CLI registry: generators plus the claims each one must satisfy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyClaim:
    name: str
    check: Callable[[Graph], tuple[bool, str]]


def _freeness_claim(spec: PatternSpec) -> FamilyClaim:
    label = f"{format_pattern(spec)}-free"

    def check(g: Graph) -> tuple[bool, str]:
        rep = is_free(g, [spec])
        if rep.free:
            return True, ""
        return False, f"embedding {rep.witness_embedding}"

    return FamilyClaim(label, check)


def _subcubic_claim() -> FamilyClaim:
    def check(g: Graph) -> tuple[bool, str]:
        d = g.max_degree()
        return (d <= 3, f"max degree {d}")
    return FamilyClaim("subcubic", check)


def _common_neighbour_claim() -> FamilyClaim:
    # walls: any two vertices share at most one neighbour
    def check(g: Graph) -> tuple[bool, str]:
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if (g.masks[u] & g.masks[v]).bit_count() > 1:
                    return False, f"vertices {u},{v} share two neighbours"
        return True, ""
    return FamilyClaim("common-neighbours<=1", check)


def _generate_completed_wall(h: int, r: int, k: int) -> Graph:
    return complete_colour_classes(wall_colouring(elementary_wall(h, r), k))


@dataclass(frozen=True)
class Family:
    name: str
    arity: int
    build: Callable[..., Graph]
    claims: tuple[FamilyClaim, ...]


FAMILIES: dict[str, Family] = {
    "wall": Family("wall", 2, elementary_wall,
                   (_subcubic_claim(), _common_neighbour_claim())),
    "fW": Family("fW", 2, lambda h, r: _generate_completed_wall(h, r, 2),
                 (_freeness_claim(edgeless(3)),
                  _freeness_claim(co_biclique_universal(4, 4)))),
    "gW": Family("gW", 2, lambda h, r: _generate_completed_wall(h, r, 3),
                 (_freeness_claim(edgeless(4)),
                  _freeness_claim(co_biclique_universal(3, 3)))),
    "hW": Family("hW", 2, lambda h, r: _generate_completed_wall(h, r, 4),
                 (_freeness_claim(edgeless(5)),
                  _freeness_claim(co_biclique_universal(2, 2)))),
    "wn": Family("wn", 1, wn_graph, (_common_neighbour_claim(),)),
    "w5": Family("w5", 1, w5_family,
                 (_freeness_claim(clique(5)),
                  _freeness_claim(linear_forest(1, 1, 1)))),
    "w4": Family("w4", 1, w4_family,
                 (_freeness_claim(clique(4)),
                  _freeness_claim(linear_forest(1, 2, 1)),
                  _freeness_claim(linear_forest(0, 1, 2)))),
}


def generate_family(name: str, params) -> Graph:
    fam = FAMILIES.get(name)
    if fam is None:
        raise UsageError(f"unknown family {name!r}")
    params = [int(p) for p in params]
    if len(params) != fam.arity:
        raise UsageError(f"family {name} takes {fam.arity} parameter(s)")
    return fam.build(*params)


def verify_family(name: str, params, g: Graph | None = None
                  ) -> list[tuple[str, bool, str]]:
    """Run the family's claim suite; returns (claim, ok, detail) rows."""
    fam = FAMILIES.get(name)
    if fam is None:
        raise UsageError(f"unknown family {name!r}")
    if g is None:
        g = generate_family(name, params)
    return [(c.name, *c.check(g)) for c in fam.claims]
