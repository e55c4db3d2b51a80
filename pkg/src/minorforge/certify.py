"""Independent certificate verification, a brute-force ground truth for
tiny graphs, and the headline bound formulas for reporting.

Verification reads only the graph and the claimed branch sets; it never
trusts builder internals. ``verify_certificate_edgewise`` is a second,
independently coded checker (different traversal strategy) used as a
mutual oracle.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .edgelist import format_edgelist
from .errors import CapabilityError, InputError
from .graph import Graph, VertexSet

if TYPE_CHECKING:
    from .builder import MinorCertificate


@dataclass
class CertReport:
    valid: bool
    k: int
    violations: list[dict] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {"valid": self.valid, "k": self.k, "violations": self.violations}


def _branch_members(cert) -> list[frozenset[int]]:
    return [b.members if isinstance(b, VertexSet) else frozenset(b) for b in cert.branch_sets]


def verify_certificate(g: Graph, cert) -> CertReport:
    """Check disjointness, per-set connectivity (BFS), and pairwise adjacency
    (neighbor-set intersection). All three checks are exact."""
    sets = _branch_members(cert)
    for idx, s in enumerate(sets):
        for v in s:
            if not 0 <= v < g.n:
                raise InputError(f"branch set {idx} has out-of-range vertex {v}")
    violations: list[dict] = []
    owner: dict[int, int] = {}
    for i, s in enumerate(sets):
        for v in s:
            if v in owner:
                violations.append(
                    {"kind": "disjointness", "detail": {"sets": [owner[v], i], "vertex": v}}
                )
            else:
                owner[v] = i
    for i, s in enumerate(sets):
        if not s:
            violations.append({"kind": "connectivity", "detail": {"set": i, "reason": "empty"}})
            continue
        start = min(s)
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                w = int(w)
                if w in s and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(s):
            violations.append({"kind": "connectivity", "detail": {"set": i}})
    for i in range(len(sets)):
        nbrs_i: set[int] = set()
        for v in sets[i]:
            nbrs_i.update(int(w) for w in g.neighbors(v))
        for j in range(i + 1, len(sets)):
            if not (nbrs_i & sets[j]):
                violations.append({"kind": "adjacency", "detail": {"sets": [i, j]}})
    return CertReport(valid=not violations, k=len(sets), violations=violations)


def verify_certificate_edgewise(g: Graph, cert) -> CertReport:
    """Independently coded twin of verify_certificate.

    Disjointness via sorting, connectivity via union-find over the edge
    list, adjacency by a single edge-centric sweep.
    """
    sets = _branch_members(cert)
    for idx, s in enumerate(sets):
        for v in s:
            if not 0 <= v < g.n:
                raise InputError(f"branch set {idx} has out-of-range vertex {v}")
    violations: list[dict] = []
    labeled = sorted((v, i) for i, s in enumerate(sets) for v in s)
    for (v1, i1), (v2, i2) in zip(labeled, labeled[1:]):
        if v1 == v2:
            violations.append(
                {"kind": "disjointness", "detail": {"sets": sorted((i1, i2)), "vertex": v1}}
            )
    label = {}
    for i, s in enumerate(sets):
        for v in s:
            label.setdefault(v, i)
    parent = {v: v for v in label}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    pair_adjacent: set[tuple[int, int]] = set()
    for u, v in g.edges():
        a, b = label.get(u), label.get(v)
        if a is None or b is None:
            continue
        if a == b:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        else:
            pair_adjacent.add((min(a, b), max(a, b)))
    for i, s in enumerate(sets):
        if not s:
            violations.append({"kind": "connectivity", "detail": {"set": i, "reason": "empty"}})
            continue
        roots = {find(v) for v in s}
        if len(roots) != 1:
            violations.append({"kind": "connectivity", "detail": {"set": i}})
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if (i, j) not in pair_adjacent:
                violations.append({"kind": "adjacency", "detail": {"sets": [i, j]}})
    return CertReport(valid=not violations, k=len(sets), violations=violations)


# ---------------------------------------------------------------------------
# exact ground truth on tiny graphs


def hadwiger_brute(g: Graph) -> int:
    """Exact largest k with a K_k minor, by branch-and-bound over families
    of disjoint connected pairwise-adjacent subsets. Hard-capped at n <= 10.

    Canonical enumeration: the minimum unconsumed vertex is either
    discarded or becomes the minimum of the next branch set, so every
    family is visited once.
    """
    if g.n > 10:
        raise CapabilityError(f"hadwiger_brute capped at n<=10, got n={g.n}")
    if g.n == 0:
        return 0
    n = g.n
    nb = g.neighbor_masks()

    # neighborhood of every subset, DP over masks
    nor = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        nor[mask] = nor[mask ^ low] | nb[low.bit_length() - 1]

    # all connected subset masks, grouped by minimum vertex, small first
    connected_by_min: list[list[int]] = [[] for _ in range(n)]
    for mask in range(1, 1 << n):
        low_i = (mask & -mask).bit_length() - 1
        seen = mask & -mask
        while True:
            grow = nor[seen] & mask & ~seen
            if not grow:
                break
            seen |= grow
        if seen == mask:
            connected_by_min[low_i].append(mask)
    for lst in connected_by_min:
        lst.sort(key=lambda m: (m.bit_count(), m))

    best = 1  # a single vertex is always a K_1 minor

    def rec(available: int, chosen_nbrs: list[int], depth: int):
        nonlocal best
        if depth > best:
            best = depth
        # each future branch set needs at least one fresh vertex
        if not available or depth + available.bit_count() <= best:
            return
        v_bit = available & -available
        for cand in connected_by_min[v_bit.bit_length() - 1]:
            if cand & ~available:
                continue
            if any(not (s_nbr & cand) for s_nbr in chosen_nbrs):
                continue
            rec(available & ~cand, chosen_nbrs + [nor[cand] & ~cand], depth + 1)
        rec(available ^ v_bit, chosen_nbrs, depth)  # v unused

    rec((1 << n) - 1, [], 0)
    return best


# ---------------------------------------------------------------------------
# headline bound formulas (all hidden constants set to 1, loudly labeled)


def theoretical_bounds(
    n: int, d: int, t: float, alpha: float, log_base: float = 2.0
) -> dict:
    """Raw shapes of the published lower bounds with every constant set to 1.

    Values below 3 are flagged vacuous; they are reported for trend
    comparison only, never as ground truth.
    """
    if n < 2 or d < 1 or t <= 0 or alpha < 0:
        raise InputError("bounds need n >= 2, d >= 1, t > 0, alpha >= 0")
    logn = math.log(n, log_base)
    logt = math.log(t, log_base) if t > 1 else 0.0
    avg_degree_bound = math.sqrt(n * t * logt) / math.sqrt(logn) if logt > 0 else 0.0
    clique_bound_talpha = alpha**2 * avg_degree_bound
    clique_bound_vexp = math.sqrt(n * d) / logn**10
    return {
        "constants_convention": "all hidden constants = 1",
        "log_base": log_base,
        "expanding_avg_degree_bound": {
            "value": avg_degree_bound,
            "vacuous": avg_degree_bound < 3,
        },
        "expanding_clique_bound": {
            "value": clique_bound_talpha,
            "vacuous": clique_bound_talpha < 3,
        },
        "vertex_expansion_clique_bound": {
            "value": clique_bound_vexp,
            "vacuous": clique_bound_vexp < 3,
        },
    }


# ---------------------------------------------------------------------------
# certificate file format


FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3


def fnv1a64(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


def graph_hash(g: Graph) -> str:
    """FNV-1a 64 hex digest of the canonical edge-list serialization."""
    return f"{fnv1a64(format_edgelist(g).encode('utf-8')):016x}"


def write_certificate(cert, g: Graph, path: str) -> None:
    payload = {
        "k": cert.k,
        "branch_sets": [sorted(b.members if isinstance(b, VertexSet) else b) for b in cert.branch_sets],
        "graph_hash": graph_hash(g),
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f)
        f.write("\n")


def read_certificate(path: str, g: Graph):
    """Load a certificate file, rejecting graph-hash mismatches."""
    from .builder import MinorCertificate

    try:
        with open(path, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except OSError as exc:
        raise InputError(f"cannot read certificate file {path!r}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"certificate file {path!r} is not valid JSON: {exc}") from None
    for key in ("k", "branch_sets", "graph_hash"):
        if key not in payload:
            raise InputError(f"certificate file missing key {key!r}")
    expected = graph_hash(g)
    if payload["graph_hash"] != expected:
        raise InputError(
            "certificate graph_hash mismatch: certificate was issued for "
            f"{payload['graph_hash']}, this graph hashes to {expected}"
        )
    sets = [VertexSet(g.n, s) for s in payload["branch_sets"]]
    if payload["k"] != len(sets):
        raise InputError(f"certificate declares k={payload['k']} but has {len(sets)} sets")
    return MinorCertificate(k=len(sets), branch_sets=sets, provenance={"source": path})
