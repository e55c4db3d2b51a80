"""Immutable simple-graph representation and the primitive operations.

Adjacency is stored CSR-style in numpy arrays with every neighbor list
sorted ascending, so iteration orders (and therefore everything built on
top: searches, tie-breaks, witnesses) are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InputError

Edge = tuple[int, int]


class Graph:
    """Simple undirected graph on vertices 0..n-1, immutable after construction.

    Invariants: no loops, no parallel edges, symmetric adjacency, and
    ``m`` equals half the sum of the adjacency-list lengths.
    """

    __slots__ = ("n", "m", "indptr", "indices", "degrees", "_nbr_masks")

    def __init__(self, n: int, edges: Iterable[Edge]):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        seen: set[Edge] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise InputError(f"duplicate edge ({e[0]},{e[1]})")
            seen.add(e)
        self.n = n
        self.m = len(seen)
        deg = np.zeros(n, dtype=np.int64)
        for u, v in seen:
            deg[u] += 1
            deg[v] += 1
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        indices = np.zeros(2 * self.m, dtype=np.int32)
        fill = indptr[:-1].copy()
        for u, v in sorted(seen):
            indices[fill[u]] = v
            fill[u] += 1
            indices[fill[v]] = u
            fill[v] += 1
        # neighbor lists sorted ascending for deterministic iteration
        for u in range(n):
            lo, hi = indptr[u], indptr[u + 1]
            indices[lo:hi] = np.sort(indices[lo:hi])
        indptr.setflags(write=False)
        indices.setflags(write=False)
        deg.setflags(write=False)
        self.indptr = indptr
        self.indices = indices
        self.degrees = deg
        self._nbr_masks: list[int] | None = None

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Sequence[int]]) -> "Graph":
        n = len(adjacency)
        edges = []
        for u, nbrs in enumerate(adjacency):
            for v in nbrs:
                if u < v:
                    edges.append((u, v))
                elif u == v:
                    raise InputError(f"self-loop at vertex {u}")
        g = cls(n, edges)
        # from_adjacency must round-trip: verify symmetry of the input
        for u in range(n):
            if sorted(set(adjacency[u])) != list(g.neighbors(u)):
                raise InputError(f"adjacency of vertex {u} is not symmetric or has duplicates")
        return g

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor ids of v (read-only view)."""
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InputError(f"vertex out of range: ({u},{v})")
        nbrs = self.neighbors(u)
        i = int(np.searchsorted(nbrs, v))
        return i < len(nbrs) and int(nbrs[i]) == v

    def edges(self) -> Iterator[Edge]:
        """Edges (u, v) with u < v, ascending lexicographic order."""
        for u in range(self.n):
            for v in self.neighbors(u):
                if u < int(v):
                    yield (u, int(v))

    def neighbor_masks(self) -> list[int]:
        """Per-vertex neighbor bitmasks; cached, intended for n small enough
        that subset enumeration is feasible."""
        if self._nbr_masks is None:
            masks = []
            for v in range(self.n):
                mask = 0
                for w in self.neighbors(v):
                    mask |= 1 << int(w)
                masks.append(mask)
            self._nbr_masks = masks
        return self._nbr_masks

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.m, self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class VertexSet:
    """Subset of the vertices of a host graph of known order.

    Membership is O(1); iteration is ascending by id.
    """

    __slots__ = ("n", "members")

    def __init__(self, n: int, members: Iterable[int] = ()):
        ms = frozenset(int(v) for v in members)
        for v in ms:
            if not (0 <= v < n):
                raise InputError(f"vertex {v} out of range for n={n}")
        self.n = n
        self.members = ms

    @classmethod
    def over(cls, g: Graph, members: Iterable[int] = ()) -> "VertexSet":
        return cls(g.n, members)

    def __contains__(self, v: int) -> bool:
        return v in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VertexSet):
            return self.n == other.n and self.members == other.members
        if isinstance(other, (set, frozenset)):
            return self.members == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self.members))

    def __repr__(self) -> str:
        return f"VertexSet(n={self.n}, {{{', '.join(map(str, sorted(self.members)))}}})"


def _as_members(g: Graph, s: "VertexSet | Iterable[int]") -> frozenset[int]:
    if isinstance(s, VertexSet):
        if s.n != g.n:
            raise InputError(f"vertex set over n={s.n} used with graph of n={g.n}")
        return s.members
    ms = frozenset(int(v) for v in s)
    for v in ms:
        if not (0 <= v < g.n):
            raise InputError(f"vertex {v} out of range for n={g.n}")
    return ms


def neighborhood(g: Graph, s: "VertexSet | Iterable[int]") -> VertexSet:
    """External neighborhood N(S): vertices outside S adjacent to S."""
    members = _as_members(g, s)
    out: set[int] = set()
    for v in members:
        out.update(int(w) for w in g.neighbors(v))
    out -= members
    return VertexSet(g.n, out)


def average_degree(g: Graph) -> Fraction:
    """2m/n as an exact rational; error on the empty graph."""
    if g.n == 0:
        raise InputError("average degree undefined for the empty graph")
    return Fraction(2 * g.m, g.n)


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise InputError("minimum degree undefined for the empty graph")
    return int(g.degrees.min())


def induced_subgraph(g: Graph, s: "VertexSet | Iterable[int]") -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on S plus the remap table (new id -> original id)."""
    members = _as_members(g, s)
    remap = tuple(sorted(members))
    back = {old: new for new, old in enumerate(remap)}
    edges = []
    for new_u, old_u in enumerate(remap):
        for w in g.neighbors(old_u):
            w = int(w)
            if w in members and old_u < w:
                edges.append((new_u, back[w]))
    return Graph(len(remap), edges), remap


def delete_vertices(g: Graph, s: "VertexSet | Iterable[int]") -> Graph:
    """G - S; remaining vertices renumbered preserving ascending order."""
    members = _as_members(g, s)
    keep = [v for v in range(g.n) if v not in members]
    sub, _ = induced_subgraph(g, keep)
    return sub


def delete_edges(g: Graph, edges: Iterable[Edge]) -> Graph:
    """Spanning subgraph with the given edges removed; ids unchanged.

    Deleting an edge not present is a no-op.
    """
    drop = set()
    for u, v in edges:
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise InputError(f"edge ({u},{v}) out of range for n={g.n}")
        drop.add((u, v) if u < v else (v, u))
    kept = [e for e in g.edges() if e not in drop]
    return Graph(g.n, kept)


def is_connected_subset(g: Graph, members: frozenset[int]) -> bool:
    """True iff G[members] is connected (empty set counts as not connected)."""
    if not members:
        return False
    start = next(iter(members))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            w = int(w)
            if w in members and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(members)


def contract_partition(g: Graph, parts: Sequence["VertexSet | Iterable[int]"]) -> Graph:
    """Contract each part to a single vertex; uncovered vertices stay singleton.

    Output vertex order: one vertex per part, in the given order, then the
    uncovered original vertices ascending. Parts must be disjoint and each
    must induce a connected subgraph.
    """
    part_sets = [_as_members(g, p) for p in parts]
    covered: set[int] = set()
    for i, p in enumerate(part_sets):
        if not p:
            raise InputError(f"part {i} is empty")
        if p & covered:
            raise InputError(f"part {i} overlaps an earlier part")
        if not is_connected_subset(g, p):
            raise InputError(f"part {i} does not induce a connected subgraph")
        covered |= p
    label = {}
    for i, p in enumerate(part_sets):
        for v in p:
            label[v] = i
    next_id = len(part_sets)
    for v in range(g.n):
        if v not in covered:
            label[v] = next_id
            next_id += 1
    new_edges = set()
    for u, v in g.edges():
        a, b = label[u], label[v]
        if a != b:
            new_edges.add((a, b) if a < b else (b, a))
    return Graph(next_id, sorted(new_edges))
