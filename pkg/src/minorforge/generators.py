"""Graph generators for the test corpus and the benchmark harness."""

from __future__ import annotations

import random
from collections import defaultdict

from .errors import CapabilityError, InputError
from .graph import Graph

RESTART_CAP = 1000


def gen_complete(n: int) -> Graph:
    if n < 0:
        raise InputError(f"need n >= 0, got {n}")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    if n < 0 or not 0 <= p <= 1:
        raise InputError(f"need n >= 0 and p in [0,1], got n={n}, p={p}")
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(n, edges)


def gen_grid(rows: int, cols: int) -> Graph:
    if rows < 1 or cols < 1:
        raise InputError(f"need rows, cols >= 1, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def gen_hypercube(dim: int) -> Graph:
    if dim < 0:
        raise InputError(f"need dim >= 0, got {dim}")
    n = 1 << dim
    edges = [(v, v ^ (1 << b)) for v in range(n) for b in range(dim) if v < v ^ (1 << b)]
    return Graph(n, edges)


def gen_random_regular(n: int, d: int, seed: int) -> Graph:
    """Random d-regular simple graph via the configuration model.

    Collided stubs are re-matched rather than restarting the whole
    pairing (a full restart has vanishing success probability already at
    d = 8); a full restart happens only when the leftover stubs admit no
    further simple edge. Restarts are capped.
    """
    if n * d % 2 != 0:
        raise InputError(f"n*d must be even, got n={n}, d={d}")
    if not 0 <= d < n:
        raise InputError(f"need 0 <= d < n, got n={n}, d={d}")
    if d == 0:
        return Graph(n, [])
    rng = random.Random(seed)

    def suitable(edges, potential):
        # any simple edge still placeable between colliding stubs?
        if not potential:
            return True
        nodes = sorted(potential)
        for hi in nodes:
            for lo in nodes:
                if lo == hi:
                    break
                if (lo, hi) not in edges:
                    return True
        return False

    def try_once():
        edges: set[tuple[int, int]] = set()
        stubs = list(range(n)) * d
        while stubs:
            potential = defaultdict(int)
            rng.shuffle(stubs)
            it = iter(stubs)
            for s1, s2 in zip(it, it):
                if s1 > s2:
                    s1, s2 = s2, s1
                if s1 != s2 and (s1, s2) not in edges:
                    edges.add((s1, s2))
                else:
                    potential[s1] += 1
                    potential[s2] += 1
            if not suitable(edges, potential):
                return None
            stubs = [v for v, c in potential.items() for _ in range(c)]
        return edges

    for _ in range(RESTART_CAP):
        edges = try_once()
        if edges is not None:
            return Graph(n, edges)
    raise CapabilityError(
        f"random regular generation failed after {RESTART_CAP} restarts (n={n}, d={d})"
    )


GENERATORS = {
    "complete": gen_complete,
    "gnp": gen_gnp,
    "grid": gen_grid,
    "hypercube": gen_hypercube,
    "random_regular": gen_random_regular,
}


def generate(spec: dict) -> Graph:
    """Build a graph from a generator description dict.

    Expected keys: ``name`` plus that generator's parameters, e.g.
    {"name": "random_regular", "n": 200, "d": 4, "seed": 7}.
    """
    spec = dict(spec)
    name = spec.pop("name", None)
    if name not in GENERATORS:
        raise InputError(f"unknown generator {name!r}; choose from {sorted(GENERATORS)}")
    try:
        return GENERATORS[name](**spec)
    except TypeError as exc:
        raise InputError(f"bad parameters for generator {name!r}: {exc}") from None
