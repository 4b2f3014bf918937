"""Pure-Python kernels over arbitrary-precision int bitmasks.

These are the reference implementations: the numba backend mirrors them
bit for bit on graphs small enough for int64 masks, and everything larger
than 62 vertices is routed here regardless of backend. Branch-and-bound
search does not vectorise, so the fallback is plain Python rather than
numpy array code.
"""

from __future__ import annotations

BIG = 1 << 30


def mis_size(conf: list[int], cand: int, cap: int = BIG) -> int:
    """Maximum independent set size of the conflict graph, capped at `cap`.

    `conf[i]` is the bitmask of vertices conflicting with i; `cand` the
    candidate set. Branch on a maximum-degree vertex; degree<=1 remainders
    close in one step; greedy clique cover gives the upper bound.
    """
    best = 0
    stack = [(cand, 0)]
    while stack:
        cand, cur = stack.pop()
        if best >= cap:
            return best
        cnt = cand.bit_count()
        if cur + cnt <= best:
            continue
        if cnt == 0:
            best = cur
            continue
        # max-degree vertex within cand; track total degree for the
        # degree<=1 closed form
        bestv = -1
        bestdeg = -1
        total = 0
        rest = cand
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            d = (conf[v] & cand).bit_count()
            total += d
            if d > bestdeg:
                bestdeg = d
                bestv = v
        if bestdeg <= 1:
            size = cur + cnt - total // 2
            if size > best:
                best = size
            continue
        # clique cover bound: MIS cannot exceed the number of cliques
        cover = 0
        rest = cand
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            clique_conf = conf[v]
            rest ^= low
            cover += 1
            members = rest & clique_conf
            while members:
                low = members & -members
                u = low.bit_length() - 1
                members ^= low
                rest &= ~(1 << u)
                clique_conf &= conf[u]
                members &= clique_conf
        if cur + cover <= best:
            continue
        # exclude branch is explored after the include branch
        stack.append((cand & ~(1 << bestv), cur))
        stack.append((cand & ~(conf[bestv] | (1 << bestv)), cur + 1))
    return best


def cut_matching(masks, a_mask: int, b_mask: int, in_graph: bool, cap: int = BIG) -> int:
    """Size of a maximum induced matching between sides `a_mask` and `b_mask`.

    With in_graph=False the matching is judged in the bipartite cut graph
    (edges inside a side cannot spoil it); with in_graph=True same-side
    edges of the host graph spoil inducedness as well.
    """
    eu: list[int] = []
    ev: list[int] = []
    rest = a_mask
    while rest:
        low = rest & -rest
        u = low.bit_length() - 1
        rest ^= low
        cross = masks[u] & b_mask
        while cross:
            lo = cross & -cross
            v = lo.bit_length() - 1
            cross ^= lo
            eu.append(u)
            ev.append(v)
    ne = len(eu)
    if ne == 0:
        return 0
    conf = [0] * ne
    for i in range(ne):
        ui, vi = eu[i], ev[i]
        for j in range(i + 1, ne):
            uj, vj = eu[j], ev[j]
            bad = (ui == uj or vi == vj
                   or (masks[ui] >> vj) & 1 or (masks[uj] >> vi) & 1)
            if not bad and in_graph:
                bad = (masks[ui] >> uj) & 1 or (masks[vi] >> vj) & 1
            if bad:
                conf[i] |= 1 << j
                conf[j] |= 1 << i
    return mis_size(conf, (1 << ne) - 1, cap)


def cut_table(masks, n: int, in_graph: bool) -> list[int]:
    """Exact cut value for every bipartition mask of an n-vertex graph.

    table[m] is the maximum induced matching across the cut (m, ~m); the
    complement mask gets the same value. Entries 0 and 2^n-1 stay 0.
    """
    full = (1 << n) - 1
    table = [-1] * (full + 1)
    table[0] = table[full] = 0
    for m in range(1, full):
        if table[m] >= 0:
            continue
        val = cut_matching(masks, m, full ^ m, in_graph)
        table[m] = val
        table[full ^ m] = val
    return table


def width_search(table, n: int, lower_bound: int) -> tuple[int, list[int]]:
    """Exhaustive minimum over leaf-labelled subcubic trees on n leaves.

    Trees are enumerated by iterative leaf insertion: vertex k subdivides
    one of the 2k-3 edges of the current tree, so (2n-5)!! shapes in all,
    none deduplicated. Edge state is the bitmask of graph vertices on the
    far side (the side without leaf 0). Returns the optimum width and the
    insertion-choice vector of the first optimal tree; stops early when
    `lower_bound` is reached.
    """
    if n == 2:
        return table[2], []
    best = BIG
    best_choices: list[int] = []
    nchoice = n - 2
    choices = [-1] * nchoice
    # edge lists per depth: depth d (vertices 0..d+1 placed) has 2d+1 edges
    edges = [[0] * (2 * d + 1) for d in range(nchoice + 1)]
    edges[0][0] = 2  # initial tree on leaves {0,1}: far side {1}
    d = 0
    while d >= 0:
        choices[d] += 1
        if choices[d] >= 2 * d + 1:
            choices[d] = -1
            d -= 1
            continue
        cur = edges[d]
        nxt = edges[d + 1]
        c = choices[d]
        m_e = cur[c]
        bit = 1 << (d + 2)
        ne = 2 * d + 1
        for i in range(ne):
            m = cur[i]
            if m != m_e and (m_e & m) == m_e:
                nxt[i] = m | bit
            else:
                nxt[i] = m
        nxt[ne] = m_e | bit
        nxt[ne + 1] = bit
        if d + 1 == nchoice:
            w = 0
            for m in nxt:
                v = table[m]
                if v > w:
                    w = v
                    if w >= best:
                        break
            if w < best:
                best = w
                best_choices = choices[:]
                if best <= lower_bound:
                    return best, best_choices
        else:
            d += 1
    return best, best_choices
