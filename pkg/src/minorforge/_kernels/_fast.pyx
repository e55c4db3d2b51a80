# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled kernels; semantics mirror ``pure`` bit for bit."""

import numpy as np

BACKEND = "compiled"


def bfs_dist(indptr, indices, sources, allowed):
    cdef const long long[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int[::1] idx = np.ascontiguousarray(indices, dtype=np.int32)
    cdef const unsigned char[::1] ok = np.ascontiguousarray(allowed, dtype=np.uint8)
    cdef Py_ssize_t n = ip.shape[0] - 1
    dist_arr = np.full(n, -1, dtype=np.int32)
    cdef int[::1] dist = dist_arr
    queue_arr = np.zeros(n, dtype=np.int32)
    cdef int[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 0
    cdef Py_ssize_t v, w, j
    cdef int dv
    for s in sources:
        v = <Py_ssize_t> s
        if ok[v] and dist[v] < 0:
            dist[v] = 0
            queue[tail] = <int> v
            tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v]
        for j in range(ip[v], ip[v + 1]):
            w = idx[j]
            if ok[w] and dist[w] < 0:
                dist[w] = dv + 1
                queue[tail] = <int> w
                tail += 1
    return dist_arr


def ball_ratio_scan(indptr, indices, allowed, lo, hi):
    cdef const long long[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int[::1] idx = np.ascontiguousarray(indices, dtype=np.int32)
    cdef const unsigned char[::1] ok = np.ascontiguousarray(allowed, dtype=np.uint8)
    cdef Py_ssize_t n = ip.shape[0] - 1
    cdef long long clo = lo, chi = hi
    best_ratio_arr = np.full(n, np.inf, dtype=np.float64)
    best_size_arr = np.zeros(n, dtype=np.int64)
    cdef double[::1] best_ratio = best_ratio_arr
    cdef long long[::1] best_size = best_size_arr
    stamp_arr = np.full(n, -1, dtype=np.int64)
    cdef long long[::1] stamp = stamp_arr
    buf_arr = np.zeros(n, dtype=np.int32)
    cdef int[::1] buf = buf_arr
    cdef Py_ssize_t src, v, w, j, k
    cdef Py_ssize_t f_lo, f_hi, nxt_hi
    cdef long long ball
    cdef double br, r
    cdef long long bs
    for src in range(n):
        if not ok[src]:
            continue
        buf[0] = <int> src
        stamp[src] = src
        f_lo = 0
        f_hi = 1
        ball = 1
        br = np.inf
        bs = 0
        while True:
            nxt_hi = f_hi
            for k in range(f_lo, f_hi):
                v = buf[k]
                for j in range(ip[v], ip[v + 1]):
                    w = idx[j]
                    if ok[w] and stamp[w] != src:
                        stamp[w] = src
                        buf[nxt_hi] = <int> w
                        nxt_hi += 1
            if clo <= ball <= chi:
                r = (<double> (nxt_hi - f_hi)) / (<double> ball)
                if r < br:
                    br = r
                    bs = ball
            if nxt_hi == f_hi:
                break
            ball += nxt_hi - f_hi
            if ball > chi:
                break
            f_lo = f_hi
            f_hi = nxt_hi
        best_ratio[src] = br
        best_size[src] = bs
    return best_ratio_arr, best_size_arr


def sweep_neighbor_sizes(indptr, indices, allowed, order):
    cdef const long long[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int[::1] idx = np.ascontiguousarray(indices, dtype=np.int32)
    cdef const unsigned char[::1] ok = np.ascontiguousarray(allowed, dtype=np.uint8)
    cdef const int[::1] o = np.ascontiguousarray(order, dtype=np.int32)
    cdef Py_ssize_t n = ip.shape[0] - 1
    cdef Py_ssize_t kmax = o.shape[0]
    out_arr = np.zeros(kmax, dtype=np.int64)
    cdef long long[::1] out = out_arr
    state_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] state = state_arr
    cdef Py_ssize_t k, v, w, j
    cdef long long nbr = 0
    for k in range(kmax):
        v = o[k]
        if state[v] == 1:
            nbr -= 1
        state[v] = 2
        for j in range(ip[v], ip[v + 1]):
            w = idx[j]
            if ok[w] and state[w] == 0:
                state[w] = 1
                nbr += 1
        out[k] = nbr
    return out_arr


def greedy_min_boundary(indptr, indices, allowed, seed, max_size):
    cdef const long long[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int[::1] idx = np.ascontiguousarray(indices, dtype=np.int32)
    cdef const unsigned char[::1] ok = np.ascontiguousarray(allowed, dtype=np.uint8)
    cdef Py_ssize_t n = ip.shape[0] - 1
    cdef Py_ssize_t cseed = seed
    cdef Py_ssize_t cap = max_size
    if cap > n:
        cap = n
    if not ok[cseed]:
        return np.zeros(0, dtype=np.int32), np.zeros(0, dtype=np.int64)
    state_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] state = state_arr
    cnt_arr = np.zeros(n, dtype=np.int64)
    cdef long long[::1] cnt_out = cnt_arr
    cdef Py_ssize_t v, w, u, j, jj
    cdef long long c
    for v in range(n):
        if ok[v]:
            c = 0
            for j in range(ip[v], ip[v + 1]):
                if ok[idx[j]]:
                    c += 1
            cnt_out[v] = c
    order_arr = np.zeros(cap, dtype=np.int32)
    nbr_arr = np.zeros(cap, dtype=np.int64)
    cdef int[::1] order = order_arr
    cdef long long[::1] nbrs = nbr_arr
    frontier_arr = np.zeros(n, dtype=np.int32)
    cdef int[::1] frontier = frontier_arr
    cdef Py_ssize_t f_len = 0
    cdef long long nbr_size = 0
    cdef Py_ssize_t count = 0
    cdef Py_ssize_t best_v, k
    cdef long long best_val, val

    # absorb the seed
    v = cseed
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
            frontier[f_len] = <int> w
            f_len += 1
            for jj in range(ip[w], ip[w + 1]):
                u = idx[jj]
                if ok[u]:
                    cnt_out[u] -= 1
    order[0] = <int> cseed
    nbrs[0] = nbr_size
    count = 1
    while count < cap:
        best_v = -1
        best_val = 0
        for k in range(f_len):
            v = frontier[k]
            if state[v] != 1:
                continue
            val = nbr_size - 1 + cnt_out[v]
            if best_v < 0 or val < best_val or (val == best_val and v < best_v):
                best_val = val
                best_v = v
        if best_v < 0:
            break
        v = best_v
        nbr_size -= 1
        state[v] = 2
        for j in range(ip[v], ip[v + 1]):
            w = idx[j]
            if ok[w] and state[w] == 0:
                state[w] = 1
                nbr_size += 1
                frontier[f_len] = <int> w
                f_len += 1
                for jj in range(ip[w], ip[w + 1]):
                    u = idx[jj]
                    if ok[u]:
                        cnt_out[u] -= 1
        order[count] = <int> v
        nbrs[count] = nbr_size
        count += 1
    return order_arr[:count].copy(), nbr_arr[:count].copy()
