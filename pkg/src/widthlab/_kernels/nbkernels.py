"""Numba mirrors of the pure-Python kernels, for graphs with <= 62 vertices.

Masks are int64 (bit 63 stays clear). Semantics match pykernels exactly:
identical branching order, identical tie-breaking, so both backends return
the same witnesses. cut_matching returns -1 when the cut has more than 62
cross edges; the dispatcher reroutes those calls to the Python kernel.
"""

from __future__ import annotations

import numpy as np
from numba import njit

BIG = 1 << 30


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def mis_size(conf, cand, cap):
    best = 0
    stack_cand = np.empty(4096, dtype=np.int64)
    stack_cur = np.empty(4096, dtype=np.int64)
    top = 0
    stack_cand[0] = cand
    stack_cur[0] = 0
    top = 1
    while top > 0:
        top -= 1
        cand = stack_cand[top]
        cur = stack_cur[top]
        if best >= cap:
            return best
        cnt = _popcount(cand)
        if cur + cnt <= best:
            continue
        if cnt == 0:
            best = cur
            continue
        bestv = -1
        bestdeg = -1
        total = 0
        rest = cand
        while rest:
            low = rest & -rest
            v = 0
            t = low
            while t > 1:
                t >>= 1
                v += 1
            rest ^= low
            d = _popcount(conf[v] & cand)
            total += d
            if d > bestdeg:
                bestdeg = d
                bestv = v
        if bestdeg <= 1:
            size = cur + cnt - total // 2
            if size > best:
                best = size
            continue
        cover = 0
        rest = cand
        while rest:
            low = rest & -rest
            v = 0
            t = low
            while t > 1:
                t >>= 1
                v += 1
            clique_conf = conf[v]
            rest ^= low
            cover += 1
            members = rest & clique_conf
            while members:
                lo = members & -members
                u = 0
                t = lo
                while t > 1:
                    t >>= 1
                    u += 1
                members ^= lo
                rest &= ~(np.int64(1) << u)
                clique_conf &= conf[u]
                members &= clique_conf
        if cur + cover <= best:
            continue
        stack_cand[top] = cand & ~(np.int64(1) << bestv)
        stack_cur[top] = cur
        top += 1
        stack_cand[top] = cand & ~(conf[bestv] | (np.int64(1) << bestv))
        stack_cur[top] = cur + 1
        top += 1
    return best


@njit(cache=True)
def cut_matching(masks, a_mask, b_mask, in_graph, cap):
    eu = np.empty(64, dtype=np.int64)
    ev = np.empty(64, dtype=np.int64)
    ne = 0
    rest = a_mask
    while rest:
        low = rest & -rest
        u = 0
        t = low
        while t > 1:
            t >>= 1
            u += 1
        rest ^= low
        cross = masks[u] & b_mask
        while cross:
            lo = cross & -cross
            v = 0
            t = lo
            while t > 1:
                t >>= 1
                v += 1
            cross ^= lo
            if ne >= 64:
                return -1
            eu[ne] = u
            ev[ne] = v
            ne += 1
    if ne == 0:
        return 0
    if ne > 62:
        return -1
    conf = np.zeros(ne, dtype=np.int64)
    for i in range(ne):
        ui = eu[i]
        vi = ev[i]
        for j in range(i + 1, ne):
            uj = eu[j]
            vj = ev[j]
            bad = (ui == uj or vi == vj
                   or ((masks[ui] >> vj) & 1) != 0 or ((masks[uj] >> vi) & 1) != 0)
            if not bad and in_graph:
                bad = ((masks[ui] >> uj) & 1) != 0 or ((masks[vi] >> vj) & 1) != 0
            if bad:
                conf[i] |= np.int64(1) << j
                conf[j] |= np.int64(1) << i
    return mis_size(conf, (np.int64(1) << ne) - 1, cap)


@njit(cache=True)
def cut_table(masks, n, in_graph):
    full = (np.int64(1) << n) - 1
    table = np.full(full + 1, -1, dtype=np.int64)
    table[0] = 0
    table[full] = 0
    for m in range(1, full):
        if table[m] >= 0:
            continue
        val = cut_matching(masks, np.int64(m), full ^ np.int64(m), in_graph, BIG)
        table[m] = val
        table[full ^ m] = val
    return table


@njit(cache=True)
def width_search(table, n, lower_bound):
    nchoice = n - 2
    choices = np.full(nchoice, -1, dtype=np.int64)
    best_choices = np.zeros(nchoice, dtype=np.int64)
    edges = np.zeros((nchoice + 1, 2 * nchoice + 1), dtype=np.int64)
    edges[0, 0] = 2
    best = BIG
    d = 0
    while d >= 0:
        choices[d] += 1
        if choices[d] >= 2 * d + 1:
            choices[d] = -1
            d -= 1
            continue
        c = choices[d]
        m_e = edges[d, c]
        bit = np.int64(1) << (d + 2)
        ne = 2 * d + 1
        for i in range(ne):
            m = edges[d, i]
            if m != m_e and (m_e & m) == m_e:
                edges[d + 1, i] = m | bit
            else:
                edges[d + 1, i] = m
        edges[d + 1, ne] = m_e | bit
        edges[d + 1, ne + 1] = bit
        if d + 1 == nchoice:
            w = 0
            for i in range(ne + 2):
                v = table[edges[d + 1, i]]
                if v > w:
                    w = v
                    if w >= best:
                        break
            if w < best:
                best = w
                for i in range(nchoice):
                    best_choices[i] = choices[i]
                if best <= lower_bound:
                    return best, best_choices
        else:
            d += 1
    return best, best_choices
