"""Pure-Python kernels: reference implementations of the hot loops.

Semantics must match ``_fast`` (the compiled lane) bit for bit; the test
suite compares the two on random inputs. Tie-breaks are always by
ascending vertex id, which falls out of sorted adjacency plus FIFO order.
"""

from __future__ import annotations

from collections import deque

import numpy as np

BACKEND = "pure"


def bfs_dist(indptr, indices, sources, allowed):
    """Multi-source BFS distances inside the allowed mask; -1 = unreachable.

    Sources outside the mask are ignored. Sources must be given ascending
    for deterministic layer order (callers sort).
    """
    n = len(indptr) - 1
    ip = indptr.tolist()
    idx = indices.tolist()
    ok = allowed.tolist()
    dist = [-1] * n
    q = deque()
    for s in sources:
        s = int(s)
        if ok[s] and dist[s] < 0:
            dist[s] = 0
            q.append(s)
    while q:
        v = q.popleft()
        dv = dist[v]
        for j in range(ip[v], ip[v + 1]):
            w = idx[j]
            if ok[w] and dist[w] < 0:
                dist[w] = dv + 1
                q.append(w)
    return np.asarray(dist, dtype=np.int32)


def ball_ratio_scan(indptr, indices, allowed, lo, hi):
    """Per-source best expansion ratio over BFS balls inside the mask.

    For each allowed source v and each radius r whose ball (within the
    mask) has size s with lo <= s <= hi, the candidate ratio is
    |layer r+1| / s. Returns (best_ratio, best_size) arrays; sources with
    no ball in range get ratio = +inf and size 0.
    """
    n = len(indptr) - 1
    ip = indptr.tolist()
    idx = indices.tolist()
    ok = allowed.tolist()
    best_ratio = np.full(n, np.inf, dtype=np.float64)
    best_size = np.zeros(n, dtype=np.int64)
    stamp = [-1] * n
    for src in range(n):
        if not ok[src]:
            continue
        frontier = [src]
        stamp[src] = src
        ball = 1
        br, bs = np.inf, 0
        while True:
            nxt = []
            for v in frontier:
                for j in range(ip[v], ip[v + 1]):
                    w = idx[j]
                    if ok[w] and stamp[w] != src:
                        stamp[w] = src
                        nxt.append(w)
            # the ball accumulated so far has exactly nxt as its boundary
            if lo <= ball <= hi:
                r = len(nxt) / ball
                if r < br:
                    br, bs = r, ball
            if not nxt:
                break
            ball += len(nxt)
            if ball > hi:
                break
            frontier = nxt
        best_ratio[src] = br
        best_size[src] = bs
    return best_ratio, best_size


def sweep_neighbor_sizes(indptr, indices, allowed, order):
    """|N(prefix)| within the mask for every prefix of the given order.

    order must list distinct vertices inside the mask; entry k of the
    result is the external-neighborhood size of the first k+1 vertices.
    """
    n = len(indptr) - 1
    ip = indptr.tolist()
    idx = indices.tolist()
    ok = allowed.tolist()
    state = [0] * n  # 0 outside, 1 in N(S), 2 in S
    out = np.zeros(len(order), dtype=np.int64)
    nbr = 0
    for k, v in enumerate(order):
        v = int(v)
        if state[v] == 1:
            nbr -= 1
        state[v] = 2
        for j in range(ip[v], ip[v + 1]):
            w = idx[j]
            if ok[w] and state[w] == 0:
                state[w] = 1
                nbr += 1
        out[k] = nbr
    return out


def greedy_min_boundary(indptr, indices, allowed, seed, max_size):
    """Grow a set from seed, each step taking the frontier vertex that
    minimizes the resulting external-neighborhood size (ties: smallest id).

    Returns (order, nbr) arrays for the growth trajectory: after adding
    order[k], the set's neighborhood size within the mask is nbr[k].
    """
    n = len(indptr) - 1
    ip = indptr.tolist()
    idx = indices.tolist()
    ok = allowed.tolist()
    state = [0] * n
    cnt_out = [0] * n  # per-vertex count of allowed neighbors still outside
    for v in range(n):
        if ok[v]:
            c = 0
            for j in range(ip[v], ip[v + 1]):
                if ok[idx[j]]:
                    c += 1
            cnt_out[v] = c
    order: list[int] = []
    nbrs: list[int] = []
    frontier: list[int] = []

    def absorb(v):
        nonlocal nbr_size
        if state[v] == 1:
            nbr_size -= 1
        elif state[v] == 0:
            # v leaves the outside pool directly (seed case)
            for j in range(ip[v], ip[v + 1]):
                u = idx[j]
                if ok[u]:
                    cnt_out[u] -= 1
        state[v] = 2
        for j in range(ip[v], ip[v + 1]):
            w = idx[j]
            if ok[w] and state[w] == 0:
                state[w] = 1
                nbr_size += 1
                frontier.append(w)
                for jj in range(ip[w], ip[w + 1]):
                    u = idx[jj]
                    if ok[u]:
                        cnt_out[u] -= 1

    nbr_size = 0
    if not ok[seed]:
        return np.zeros(0, dtype=np.int32), np.zeros(0, dtype=np.int64)
    absorb(seed)
    order.append(seed)
    nbrs.append(nbr_size)
    while len(order) < max_size:
        best_v = -1
        best_val = None
        for v in frontier:
            if state[v] != 1:
                continue
            val = nbr_size - 1 + cnt_out[v]
            if best_val is None or val < best_val or (val == best_val and v < best_v):
                best_val = val
                best_v = v
        if best_v < 0:
            break
        absorb(best_v)
        order.append(best_v)
        nbrs.append(nbr_size)
    return np.asarray(order, dtype=np.int32), np.asarray(nbrs, dtype=np.int64)
