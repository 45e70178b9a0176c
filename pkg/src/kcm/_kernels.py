"""Compiled inner loops.

All kernels work on the CSR arrays of :class:`kcm.graph.Graph` plus a
mutable core state made of three arrays:

``node_alive[x]``  node ``x`` is in the current k-core
``edge_alive[e]``  edge ``e`` is in the current k-core (both ends alive, not deleted)
``deg[x]``         number of alive edges at ``x``

``deg`` is kept exact for every node, alive or not, so a removed node
always ends with ``deg == 0``.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_JIT = dict(cache=True, nogil=True)


@njit(**_JIT)
def core_numbers(n, indptr, indices):
    """Bucket-queue peeling (Batagelj & Zaversnik), O(n + m)."""
    deg = np.empty(n, dtype=np.int64)
    md = 0
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
        if deg[v] > md:
            md = deg[v]
    bin_start = np.zeros(md + 2, dtype=np.int64)
    for v in range(n):
        bin_start[deg[v] + 1] += 1
    for d in range(1, md + 2):
        bin_start[d] += bin_start[d - 1]
    pos = np.empty(n, dtype=np.int64)
    vert = np.empty(n, dtype=np.int64)
    fill = bin_start.copy()
    # ascending node index within each degree bucket
    for v in range(n):
        pos[v] = fill[deg[v]]
        vert[pos[v]] = v
        fill[deg[v]] += 1
    for i in range(n):
        v = vert[i]
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            if deg[u] > deg[v]:
                du = deg[u]
                pu = pos[u]
                pw = bin_start[du]
                w = vert[pw]
                if u != w:
                    pos[u] = pw
                    vert[pu] = w
                    pos[w] = pu
                    vert[pw] = u
                bin_start[du] += 1
                deg[u] -= 1
    return deg


@njit(**_JIT)
def probe(eid, u, v, k, indptr, indices, slot_edge, edge_alive, deg, lost, mark, queue):
    """Vulnerable set of alive edge ``eid = (u, v)``; read-only on the state.

    Writes the removed nodes to ``queue[:count]`` and returns ``count``.
    ``lost`` and ``mark`` are zeroed scratch arrays and are zeroed again on
    return.
    """
    lost[u] += 1
    lost[v] += 1
    count = 0
    if deg[u] - lost[u] < k:
        mark[u] = 1
        queue[count] = u
        count += 1
    if deg[v] - lost[v] < k:
        mark[v] = 1
        queue[count] = v
        count += 1
    head = 0
    while head < count:
        y = queue[head]
        head += 1
        for j in range(indptr[y], indptr[y + 1]):
            e = slot_edge[j]
            if e == eid or not edge_alive[e]:
                continue
            w = indices[j]
            if mark[w]:
                continue
            lost[w] += 1
            if deg[w] - lost[w] < k:
                mark[w] = 1
                queue[count] = w
                count += 1
    # reset scratch: lost is nonzero only on u, v and neighbours of removed nodes
    lost[u] = 0
    lost[v] = 0
    for i in range(count):
        y = queue[i]
        mark[y] = 0
        for j in range(indptr[y], indptr[y + 1]):
            lost[indices[j]] = 0
    return count


@njit(**_JIT)
def apply_removal(eid, u, v, count, queue, indptr, indices, slot_edge, edges,
                  node_alive, edge_alive, deg, edge_log, edge_log_len):
    """Delete edge ``eid`` and the nodes ``queue[:count]`` with their edges.

    Removed edge ids are appended to ``edge_log`` starting at
    ``edge_log_len``; pass an empty log to skip journalling. Returns the new
    log length.
    """
    journal = edge_log.shape[0] > 0
    edge_alive[eid] = False
    deg[u] -= 1
    deg[v] -= 1
    if journal:
        edge_log[edge_log_len] = eid
        edge_log_len += 1
    for i in range(count):
        y = queue[i]
        node_alive[y] = False
        for j in range(indptr[y], indptr[y + 1]):
            e = slot_edge[j]
            if edge_alive[e]:
                edge_alive[e] = False
                deg[edges[e, 0]] -= 1
                deg[edges[e, 1]] -= 1
                if journal:
                    edge_log[edge_log_len] = e
                    edge_log_len += 1
    return edge_log_len


@njit(**_JIT)
def restore(edge_log, start, stop, node_log, nstart, nstop, edges, node_alive, edge_alive, deg):
    for i in range(stop - 1, start - 1, -1):
        e = edge_log[i]
        edge_alive[e] = True
        deg[edges[e, 0]] += 1
        deg[edges[e, 1]] += 1
    for i in range(nstart, nstop):
        node_alive[node_log[i]] = True


@njit(**_JIT)
def walk_permutations(perms, cand, k, indptr, indices, slot_edge, edges,
                      node_alive0, edge_alive0, deg0, prune):
    """Sum of marginal gains of every candidate over the given permutations.

    ``perms[i]`` is an ordering of candidate positions ``0..len(cand)-1``.
    Each row is walked on a fresh copy of the initial state; the gain of a
    candidate is the number of nodes its deletion cascades out of the core.
    Returns integer totals, so the sum is independent of row order.
    """
    n = node_alive0.shape[0]
    nc = cand.shape[0]
    acc = np.zeros(nc, dtype=np.int64)
    lost = np.zeros(n, dtype=np.int64)
    mark = np.zeros(n, dtype=np.uint8)
    queue = np.empty(n, dtype=np.int64)
    no_log = np.empty(0, dtype=np.int64)
    node_alive = np.empty_like(node_alive0)
    edge_alive = np.empty_like(edge_alive0)
    deg = np.empty_like(deg0)
    alive0 = 0
    for x in range(n):
        if node_alive0[x]:
            alive0 += 1
    for r in range(perms.shape[0]):
        node_alive[:] = node_alive0
        edge_alive[:] = edge_alive0
        deg[:] = deg0
        alive = alive0
        for t in range(nc):
            if prune and alive == 0:
                break
            p = perms[r, t]
            e = cand[p]
            u = edges[e, 0]
            v = edges[e, 1]
            if prune:
                # dominated: an endpoint already left, gain is 0
                if not (node_alive[u] and node_alive[v]):
                    continue
                cnt = probe(e, u, v, k, indptr, indices, slot_edge, edge_alive, deg, lost, mark, queue)
            elif edge_alive[e]:
                cnt = probe(e, u, v, k, indptr, indices, slot_edge, edge_alive, deg, lost, mark, queue)
            else:
                cnt = 0
            acc[p] += cnt
            if edge_alive[e]:
                apply_removal(e, u, v, cnt, queue, indptr, indices, slot_edge, edges,
                              node_alive, edge_alive, deg, no_log, 0)
                alive -= cnt
    return acc


@njit(**_JIT)
def greedy_round(cand, k, indptr, indices, slot_edge, edges, node_alive, edge_alive, deg,
                 prune, lost, mark, queue, dom):
    """One Greedy Cut step: best surviving candidate position and its gain.

    Candidates are scanned in position order and ties keep the earliest,
    so skipping a candidate with an endpoint inside an earlier candidate's
    vulnerable set cannot change the answer. Returns ``(-1, 0)`` when no
    candidate survives.
    """
    best = -1
    best_gain = -1
    touched = np.empty(0, dtype=np.int64)
    ntouched = 0
    if prune:
        touched = np.empty(deg.shape[0], dtype=np.int64)
    for p in range(cand.shape[0]):
        e = cand[p]
        if not edge_alive[e]:
            continue
        u = edges[e, 0]
        v = edges[e, 1]
        if prune and (dom[u] or dom[v]):
            continue
        cnt = probe(e, u, v, k, indptr, indices, slot_edge, edge_alive, deg, lost, mark, queue)
        if cnt > best_gain:
            best_gain = cnt
            best = p
        if prune:
            for i in range(cnt):
                y = queue[i]
                if not dom[y]:
                    dom[y] = 1
                    touched[ntouched] = y
                    ntouched += 1
    for i in range(ntouched):
        dom[touched[i]] = 0
    if best < 0:
        return -1, 0
    return best, best_gain


@njit(**_JIT)
def jaccard(cand, edges, indptr, indices, in_core):
    """Jaccard similarity of each candidate's endpoints inside the core."""
    out = np.zeros(cand.shape[0], dtype=np.float64)
    for p in range(cand.shape[0]):
        e = cand[p]
        u = edges[e, 0]
        v = edges[e, 1]
        du = 0
        dv = 0
        inter = 0
        i = indptr[u]
        j = indptr[v]
        iu = indptr[u + 1]
        jv = indptr[v + 1]
        for a in range(i, iu):
            if in_core[indices[a]]:
                du += 1
        for b in range(j, jv):
            if in_core[indices[b]]:
                dv += 1
        while i < iu and j < jv:
            a = indices[i]
            b = indices[j]
            if a == b:
                if in_core[a]:
                    inter += 1
                i += 1
                j += 1
            elif a < b:
                i += 1
            else:
                j += 1
        union = du + dv - inter - 2
        if union > 0:
            out[p] = inter / union
    return out
