"""Short paths between vertex sets and batched disjoint pair connection."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .errors import InputError, InvariantViolation, NoPathError
from .graph import Graph, VertexSet, _as_members


@dataclass(frozen=True)
class Path:
    """Simple path as an ordered vertex tuple; length counts edges."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("path repeats a vertex")
        if not self.vertices:
            raise InputError("empty path")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    def verify(self, g: Graph) -> None:
        for a, b in zip(self.vertices, self.vertices[1:]):
            if not g.has_edge(a, b):
                raise InvariantViolation(f"path edge ({a},{b}) missing from host graph")


@dataclass
class ConnectionPlan:
    """Vertex-disjoint connection paths between indexed branch sets."""

    pairs: list[tuple[int, int, Path]] = field(default_factory=list)
    used: set[int] = field(default_factory=set)
    unconnected: list[tuple[int, int]] = field(default_factory=list)


def _bfs_path(g: Graph, sources: Iterable[int], targets: set[int], allowed: np.ndarray):
    """Shortest path from the source set to the target set inside the mask.

    Endpoint tie-break: minimal (distance, id) target; the walk back picks
    the smallest-id predecessor at every layer. Returns None if no target
    is reachable (caller decides whether that is an error).
    """
    srcs = sorted(set(int(v) for v in sources if allowed[v]))
    if not srcs:
        return None, 0
    dist = K.bfs_dist(g.indptr, g.indices, srcs, allowed)
    reachable = int((dist >= 0).sum())
    best = None
    for v in sorted(targets):
        dv = int(dist[v])
        if dv >= 0 and (best is None or dv < best[0]):
            best = (dv, v)
    if best is None:
        return None, reachable
    _, end = best
    rev = [end]
    while dist[rev[-1]] > 0:
        v = rev[-1]
        r = int(dist[v])
        step = None
        for w in g.neighbors(v):
            w = int(w)
            if allowed[w] and dist[w] == r - 1:
                step = w
                break
        if step is None:
            raise InvariantViolation("BFS backward walk lost its layer")
        rev.append(step)
    return Path(tuple(reversed(rev))), reachable


def shortest_path_between_sets(
    g: Graph,
    x1: "VertexSet | Iterable[int]",
    x2: "VertexSet | Iterable[int]",
    forbidden: "VertexSet | Iterable[int]" = (),
) -> Path:
    """Shortest path from X1 to X2 in G - forbidden, deterministic tie-breaks.

    A shared vertex of X1 and X2 gives a length-0 path. Raises NoPathError
    (carrying the size of the reachable set) when X2 cannot be reached.
    """
    m1 = _as_members(g, x1)
    m2 = _as_members(g, x2)
    bad = _as_members(g, forbidden)
    if not m1 or not m2:
        raise InputError("both endpoint sets must be nonempty")
    allowed = np.ones(g.n, dtype=np.uint8)
    for v in bad:
        allowed[v] = 0
    result, reachable = _bfs_path(g, m1 - bad, set(m2 - bad), allowed)
    if result is None:
        raise NoPathError(
            f"no path between the sets avoiding {len(bad)} forbidden vertices",
            reachable_size=reachable,
        )
    return result


def connect_pairs(
    g: Graph,
    branch_sets: Sequence["VertexSet | Iterable[int]"],
    reservoir: "VertexSet | Iterable[int]",
    max_len: int,
) -> ConnectionPlan:
    """Greedily connect every non-adjacent pair of branch sets through the
    reservoir with vertex-disjoint path interiors.

    Pairs are attempted in ascending order of current set-to-set distance
    (recomputed lazily as the reservoir is consumed); a pair with no path
    of length <= max_len is reported unconnected.
    """
    sets = [_as_members(g, s) for s in branch_sets]
    label = {}
    for i, s in enumerate(sets):
        for v in s:
            if v in label:
                raise InputError(f"branch sets {label[v]} and {i} overlap at vertex {v}")
            label[v] = i
    res = set(_as_members(g, reservoir)) - set(label)
    adjacent = set()
    for u, v in g.edges():
        a, b = label.get(u), label.get(v)
        if a is not None and b is not None and a != b:
            adjacent.add((min(a, b), max(a, b)))
    plan = ConnectionPlan()
    todo = [
        (i, j)
        for i in range(len(sets))
        for j in range(i + 1, len(sets))
        if (i, j) not in adjacent
    ]
    if not todo:
        return plan

    base_mask = np.zeros(g.n, dtype=np.uint8)
    for v in res:
        base_mask[v] = 1

    def pair_path(i: int, j: int):
        allowed = base_mask.copy()
        for v in plan.used:
            allowed[v] = 0
        for v in sets[i] | sets[j]:
            allowed[v] = 1
        path, _ = _bfs_path(g, sets[i], set(sets[j]), allowed)
        return path

    heap = []
    for i, j in todo:
        path = pair_path(i, j)
        d = path.length if path is not None else None
        if d is None or d > max_len:
            plan.unconnected.append((i, j))
        else:
            heapq.heappush(heap, (d, i, j))
    while heap:
        d_old, i, j = heapq.heappop(heap)
        path = pair_path(i, j)
        d_new = path.length if path is not None else None
        if d_new is None or d_new > max_len:
            plan.unconnected.append((i, j))
            continue
        if heap and d_new > heap[0][0]:
            heapq.heappush(heap, (d_new, i, j))
            continue
        plan.pairs.append((i, j, path))
        plan.used.update(path.interior())
    plan.unconnected.sort()
    return plan


def verify_connection_plan(
    g: Graph, branch_sets: Sequence["VertexSet | Iterable[int]"], plan: ConnectionPlan
) -> None:
    """Independent re-check of the ConnectionPlan invariants; raises on breach."""
    sets = [_as_members(g, s) for s in branch_sets]
    all_branch = set().union(*sets) if sets else set()
    seen_interior: set[int] = set()
    for i, j, path in plan.pairs:
        path.verify(g)
        if path.vertices[0] not in sets[i] or path.vertices[-1] not in sets[j]:
            raise InvariantViolation(f"path for pair ({i},{j}) does not join the two sets")
        interior = set(path.interior())
        if interior & all_branch:
            raise InvariantViolation(f"path interior for ({i},{j}) touches a branch set")
        if interior & seen_interior:
            raise InvariantViolation(f"path interiors overlap at pair ({i},{j})")
        seen_interior |= interior
    if seen_interior != plan.used:
        raise InvariantViolation("plan.used does not match the union of path interiors")
