"""Shared test utilities: naive oracles independent of the package's
algorithmic paths, small named graphs, and random-graph helpers.

The oracles here deliberately use itertools + set arithmetic (no bitmask
DP, no kernels) so they can serve as an independent route against the
package implementations.
"""

from __future__ import annotations

import math
import random
from itertools import combinations

from minorforge import Graph


def complete(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen():
    return Graph(
        10,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
         (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
         (0, 5), (1, 6), (2, 7), (3, 8), (4, 9)],
    )


def random_graph(n, p, rng):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_connected_graph(n, p, rng, tries=200):
    for _ in range(tries):
        g = random_graph(n, p, rng)
        if n <= 1 or is_connected(g):
            return g
    # fall back: sprinkle a random spanning path underneath
    perm = list(range(n))
    rng.shuffle(perm)
    edges = set(g.edges())
    edges.update((min(a, b), max(a, b)) for a, b in zip(perm, perm[1:]))
    return Graph(n, edges)


def is_connected(g):
    if g.n == 0:
        return False
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            w = int(w)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


# ---------------------------------------------------------------------------
# naive oracles


def naive_neighborhood(g, members):
    out = set()
    for v in members:
        out.update(int(w) for w in g.neighbors(v))
    return out - set(members)


def naive_vexp_witness(g, eps):
    """First (by size, then lexicographic) U with |N(U)| < eps|U|, |U| <= n/2."""
    for size in range(1, g.n // 2 + 1):
        for combo in combinations(range(g.n), size):
            if len(naive_neighborhood(g, combo)) < eps * size:
                return set(combo)
    return None


def naive_talpha_witness(g, t, alpha):
    hi = math.floor(alpha * g.n / t)
    for size in range(1, min(hi, g.n) + 1):
        for combo in combinations(range(g.n), size):
            if len(naive_neighborhood(g, combo)) < t * size:
                return set(combo)
    return None


def naive_sparse_witness(g, eps):
    if g.n == 0:
        return None
    d = min(g.degree(v) for v in range(g.n))
    hi = math.floor(eps * g.n)
    for size in range(1, min(hi, g.n) + 1):
        for combo in combinations(range(g.n), size):
            sub = set(combo)
            e = sum(1 for u in combo for w in g.neighbors(u) if int(w) in sub) // 2
            if 2 * e > eps * d * size:
                return sub
    return None


def naive_robust_witness(g, p, rho_fn):
    """Exhaustive X plus brute-force enumeration of boundary-edge subsets."""
    lo = math.ceil(p.t / 2)
    hi = g.n // 2
    d_avg = 2 * g.m / g.n if g.n else 0.0
    for size in range(max(1, lo), hi + 1):
        for combo in combinations(range(g.n), size):
            x = set(combo)
            rs = rho_fn(size, p) * size
            budget = math.floor(d_avg * rs)
            boundary = [
                (min(u, v), max(u, v))
                for u in x
                for v in (int(w) for w in g.neighbors(u))
                if v not in x
            ]
            boundary = sorted(set(boundary))
            best_survivors = None
            for r in range(0, min(budget, len(boundary)) + 1):
                for sub in combinations(boundary, r):
                    dropped = set(sub)
                    ext = set()
                    for u in x:
                        for v in (int(w) for w in g.neighbors(u)):
                            if v in x:
                                continue
                            if (min(u, v), max(u, v)) not in dropped:
                                ext.add(v)
                    if best_survivors is None or len(ext) < best_survivors:
                        best_survivors = len(ext)
            if best_survivors is not None and best_survivors < rs:
                return x
    return None


def naive_all_pairs_dist(g):
    """Floyd-Warshall distances; math.inf when unreachable."""
    dist = [[math.inf] * g.n for _ in range(g.n)]
    for v in range(g.n):
        dist[v][v] = 0
    for u, v in g.edges():
        dist[u][v] = dist[v][u] = 1
    for k in range(g.n):
        for i in range(g.n):
            dik = dist[i][k]
            if dik is math.inf:
                continue
            for j in range(g.n):
                alt = dik + dist[k][j]
                if alt < dist[i][j]:
                    dist[i][j] = alt
    return dist


def spearman(xs, ys):
    """Spearman rank correlation with midranks for ties."""

    def ranks(vals):
        order = sorted(range(len(vals)), key=lambda i: vals[i])
        rank = [0.0] * len(vals)
        i = 0
        while i < len(order):
            j = i
            while j + 1 < len(order) and vals[order[j + 1]] == vals[order[i]]:
                j += 1
            mid = (i + j) / 2 + 1
            for t in range(i, j + 1):
                rank[order[t]] = mid
            i = j + 1
        return rank

    rx, ry = ranks(xs), ranks(ys)
    mx = sum(rx) / len(rx)
    my = sum(ry) / len(ry)
    num = sum((a - mx) * (b - my) for a, b in zip(rx, ry))
    den = math.sqrt(sum((a - mx) ** 2 for a in rx) * sum((b - my) ** 2 for b in ry))
    return num / den if den else 0.0


def random_graph_pool(count, n_range, p_range, seed):
    rng = random.Random(seed)
    pool = []
    for _ in range(count):
        n = rng.randint(*n_range)
        p = rng.uniform(*p_range)
        pool.append(random_graph(n, p, rng))
    return pool
