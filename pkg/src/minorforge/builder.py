"""Branch-set construction pipeline emitting clique-minor certificates.

Builds q branch sets of size b over a shrinking reservoir U while a dump
set D absorbs the parts of the reservoir that stop expanding, maintaining
the bookkeeping invariants:

  (1) branch sets, D and U partition the host's vertices;
  (2) each branch set is connected with a large neighborhood at creation;
  (4) D has few neighbors left in U;
  (6) D stays small relative to the branch sets.

Pairs are then joined by vertex-disjoint reservoir paths, path interiors
are absorbed, and the largest pairwise-adjacent sub-family becomes the
certificate. A mis-tuned attempt (too many branch sets cut off from the
reservoir, or a failed growth) is still harvested for its certificate,
then retried with half the target.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .connect import connect_pairs, verify_connection_plan
from .errors import (
    GrowthFailure,
    HittingFailure,
    InputError,
    InvariantViolation,
    ParameterError,
)
from .expansion import RhoParams, SearchBudget, find_nonexpanding_subset
from .extraction import extract_expander
from .graph import Graph, VertexSet, _as_members, is_connected_subset, min_degree


@dataclass(frozen=True)
class BuilderConfig:
    eps: float = 0.3
    eps1: float = 0.1
    t: float = 4.0
    polylog_exp: int = 10
    target_k: int | None = None
    seed: int = 0
    max_retries: int = 6
    log_base: float = 2.0

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise InputError(f"eps must lie in (0,1), got {self.eps}")
        if self.polylog_exp < 1:
            raise InputError(f"polylog exponent must be >= 1, got {self.polylog_exp}")
        if not self.eps1 > 0 or not self.t > 0:
            raise InputError("eps1 and t must be positive")
        if not self.log_base > 1:
            raise InputError(f"log base must exceed 1, got {self.log_base}")
        if self.max_retries < 0:
            raise InputError("max_retries must be non-negative")
        if self.target_k is not None and self.target_k < 1:
            raise InputError(f"target_k must be >= 1, got {self.target_k}")

    def to_json_dict(self) -> dict:
        return {
            "eps": self.eps,
            "eps1": self.eps1,
            "t": self.t,
            "polylog_exp": self.polylog_exp,
            "target_k": self.target_k,
            "seed": self.seed,
            "max_retries": self.max_retries,
            "log_base": self.log_base,
        }


@dataclass
class BuilderState:
    """Snapshot of the pipeline bookkeeping over the host graph."""

    host: Graph
    branch_sets: list[frozenset[int]]
    dump: set[int]
    reservoir: set[int]
    b: int
    q: int

    def bad_indices(self, eps: float, d: int) -> set[int]:
        thr = (eps / 10.0) * self.b * d
        return {
            i
            for i, bs in enumerate(self.branch_sets)
            if _count_nbr_in(self.host, bs, self.reservoir) < thr
        }

    def check_invariants(self, eps: float) -> None:
        """Exact forms of properties (1), (4) and (6); raises on breach."""
        total = len(self.dump) + len(self.reservoir) + sum(len(b) for b in self.branch_sets)
        if total != self.host.n:
            raise InvariantViolation(
                f"partition broken: |D|+|U|+|B| = {total} != n = {self.host.n}"
            )
        seen: set[int] = set()
        for part in (self.dump, self.reservoir, *self.branch_sets):
            if seen & set(part):
                raise InvariantViolation("partition parts overlap")
            seen |= set(part)
        if self.dump:
            nd = _count_nbr_in(self.host, self.dump, self.reservoir)
            if not nd < (eps / 10.0) * len(self.dump):
                raise InvariantViolation(
                    f"|N(D) ∩ U| = {nd} >= eps/10 * |D| = {(eps / 10.0) * len(self.dump)}"
                )
        b_total = sum(len(b) for b in self.branch_sets)
        if len(self.dump) * eps > 2 * b_total:
            raise InvariantViolation(
                f"|D| = {len(self.dump)} exceeds (2/eps)|B| = {2 * b_total / eps}"
            )


@dataclass
class MinorCertificate:
    """k disjoint connected branch sets over the original graph's ids,
    claimed pairwise adjacent."""

    k: int
    branch_sets: list[VertexSet]
    provenance: dict

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "branch_sets": [sorted(b.members) for b in self.branch_sets],
        }


def _count_nbr_in(g: Graph, members: Iterable[int], pool: set[int]) -> int:
    out: set[int] = set()
    ms = set(members)
    for v in ms:
        for w in g.neighbors(v):
            w = int(w)
            if w in pool:
                out.add(w)
    return len(out - ms)


def _nbr_set_in(g: Graph, members: Iterable[int], pool: set[int]) -> set[int]:
    out: set[int] = set()
    ms = set(members)
    for v in ms:
        for w in g.neighbors(v):
            w = int(w)
            if w in pool:
                out.add(w)
    return out - ms


def derive_parameters(n: int, d: int, cfg: BuilderConfig) -> tuple[int, int, int]:
    """Target clique size k, branch-set size b, and branch-set count q = k.

    k defaults to sqrt(n*d)/log^c(n) floored (clamped at 3); b is
    eps^2*n/(k*log^c n) floored (clamped at 1).
    """
    if n < 2:
        raise InputError(f"need n >= 2, got {n}")
    if d < 1:
        raise InputError(f"need minimum degree >= 1, got {d}")
    logc = math.log(n, cfg.log_base) ** cfg.polylog_exp
    if cfg.target_k is not None:
        k = cfg.target_k
    else:
        k = max(3, math.floor(math.sqrt(n * d) / logc))
    b = max(1, math.floor(cfg.eps**2 * n / (k * logc)))
    q = k
    if b * q > n:
        raise ParameterError(
            f"parameters infeasible: b*q = {b}*{q} > n = {n}; try a smaller k"
        )
    return k, b, q


def _greedy_extend(
    g: Graph, pool: set[int], start: set[int], target_size: int
) -> frozenset[int]:
    """Grow start within pool to target_size, each step adding the frontier
    vertex maximizing the neighborhood kept inside pool (ties: smallest id)."""
    b_set = set(start)
    nbr_u = _nbr_set_in(g, b_set, pool)
    while len(b_set) < target_size:
        best_v, best_gain = -1, -1
        for v in sorted(nbr_u):
            gain = 0
            for w in g.neighbors(v):
                w = int(w)
                if w in pool and w not in b_set and w not in nbr_u:
                    gain += 1
            # |N(B ∪ v) ∩ U| = |N(B) ∩ U| - 1 + gain
            if gain > best_gain:
                best_v, best_gain = v, gain
        if best_v < 0:
            raise GrowthFailure(
                f"cannot grow to size {target_size}: frontier exhausted at {len(b_set)}",
                best_neighborhood=_count_nbr_in(g, b_set, set(range(g.n))),
            )
        b_set.add(best_v)
        nbr_u.discard(best_v)
        for w in g.neighbors(best_v):
            w = int(w)
            if w in pool and w not in b_set:
                nbr_u.add(w)
    return frozenset(b_set)


def grow_branch_set(
    g: Graph, reservoir: "VertexSet | Iterable[int]", b: int, theta: float
) -> frozenset[int]:
    """Connected size-b subset of the reservoir grown greedily from the
    highest-degree-into-reservoir seed; fails unless |N(B)| >= theta."""
    pool = set(_as_members(g, reservoir))
    if len(pool) < b:
        raise InputError(f"reservoir of {len(pool)} cannot host a branch set of {b}")
    if b < 1:
        raise InputError(f"branch-set size must be >= 1, got {b}")
    seed_v, seed_deg = -1, -1
    for v in sorted(pool):
        dv = sum(1 for w in g.neighbors(v) if int(w) in pool)
        if dv > seed_deg:
            seed_v, seed_deg = v, dv
    grown = _greedy_extend(g, pool, {seed_v}, b)
    full_nbr = _count_nbr_in(g, grown, set(range(g.n)))
    if full_nbr < theta:
        raise GrowthFailure(
            f"grew to size {b} but |N(B)| = {full_nbr} < theta = {theta}",
            best_neighborhood=full_nbr,
        )
    return grown


def carve_nonexpanding(
    g: Graph,
    reservoir: "VertexSet | Iterable[int]",
    eps: float,
    cap: int,
    budget: SearchBudget | None = None,
) -> frozenset[int]:
    """Greedy maximal union of eps/10-non-expanding subsets of the reservoir.

    Witnesses W satisfy |N(W) ∩ (U∖W)| < (eps/10)|W| with |W| <= |U|/2;
    they are moved out until the falsifier is silent or the cap is hit.
    The result is locally maximal, not globally maximal.
    """
    budget = budget or SearchBudget()
    pool = set(_as_members(g, reservoir))
    if cap > len(pool):
        raise InputError(f"carve cap {cap} exceeds reservoir size {len(pool)}")
    carved: set[int] = set()
    if cap <= 0:
        return frozenset()
    while pool:
        witness = find_nonexpanding_subset(g, eps / 10.0, frozenset(pool), budget)
        if witness is None:
            break
        if len(carved) + len(witness) > cap:
            break
        carved |= witness
        pool -= witness
    return frozenset(carved)


def hitting_connector(
    g: Graph,
    reservoir: "VertexSet | Iterable[int]",
    targets: Sequence["VertexSet | Iterable[int]"],
    cfg: BuilderConfig,
    rng: random.Random | None = None,
) -> frozenset[int]:
    """Connected subset of the reservoir meeting every target.

    Samples ~sqrt(n*d)*log(n) points from the reservoir component hosting
    the targets, routes a shortest path from the sample to each target
    inside the reservoir, then joins the resulting fragments with
    shortest inter-fragment paths. Fails naming the first target that
    cannot share a component with the others.
    """
    from .connect import _bfs_path
    import numpy as np

    pool = set(_as_members(g, reservoir))
    target_sets = [set(_as_members(g, t)) for t in targets]
    for i, t in enumerate(target_sets):
        if not t:
            raise InputError(f"target {i} is empty")
        if not t <= pool:
            raise InputError(f"target {i} is not contained in the reservoir")
    if not target_sets:
        raise InputError("no targets given")
    if rng is None:
        rng = random.Random(cfg.seed)
    comps = _components_within(g, pool)
    host, host_hits = None, -1
    for comp in comps:
        hits = sum(1 for t in target_sets if t & comp)
        if hits > host_hits:
            host, host_hits = comp, hits
    for i, t in enumerate(target_sets):
        if not (t & host):
            raise HittingFailure(
                f"target {i} lies outside the reservoir component hosting the others",
                target_index=i,
            )
    d = min_degree(g)
    count = min(len(host), math.ceil(math.sqrt(g.n * max(1, d)) * math.log(g.n, cfg.log_base)))
    sample = sorted(rng.sample(sorted(host), count))
    allowed = np.zeros(g.n, dtype=np.uint8)
    for v in host:
        allowed[v] = 1
    hit: set[int] = set()
    for i, t in enumerate(target_sets):
        path, _ = _bfs_path(g, sample, t & host, allowed)
        if path is None:
            raise HittingFailure(f"target {i} unreachable inside the reservoir", target_index=i)
        hit.update(path.vertices)
    # join the fragments of the hit set with shortest paths inside the host
    while True:
        frags = _components_within(g, hit)
        if len(frags) <= 1:
            break
        first = frags[0]
        rest: set[int] = set().union(*frags[1:])
        path, _ = _bfs_path(g, sorted(first), rest, allowed)
        if path is None:
            raise InvariantViolation("hit fragments lost connectivity inside one component")
        hit.update(path.vertices)
    return frozenset(hit)


def _components_within(g: Graph, members: set[int]) -> list[set[int]]:
    comps = []
    left = set(members)
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                w = int(w)
                if w in left and w not in comp:
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
        left -= comp
    comps.sort(key=min)
    return comps


def _family_subclique(g: Graph, family: list[frozenset[int]]) -> list[int]:
    """Greedy largest pairwise-adjacent sub-family, by descending adjacency
    degree inside the family (ties: lower index)."""
    label = {}
    for i, s in enumerate(family):
        for v in s:
            label[v] = i
    adj = [set() for _ in family]
    for u, v in g.edges():
        a, b = label.get(u), label.get(v)
        if a is not None and b is not None and a != b:
            adj[a].add(b)
            adj[b].add(a)
    order = sorted(range(len(family)), key=lambda i: (-len(adj[i]), i))
    chosen: list[int] = []
    for i in order:
        if all(j in adj[i] for j in chosen):
            chosen.append(i)
    return sorted(chosen)


def _attempt(
    h: Graph,
    d_h: int,
    k: int,
    b: int,
    q: int,
    cfg: BuilderConfig,
    rng: random.Random,
    budget: SearchBudget,
    stages: list[dict],
) -> tuple[list[frozenset[int]], bool]:
    """One pipeline attempt over the host h; returns (chosen family sets in
    host ids, mistuned flag)."""
    eps = cfg.eps
    theta = (1 - 2 * eps) * b * d_h
    state = BuilderState(
        host=h, branch_sets=[], dump=set(), reservoir=set(range(h.n)), b=b, q=q
    )
    stages.append({"event": "parameters", "k": k, "b": b, "q": q, "theta": theta})
    mistuned = False
    carve_cap = math.floor(eps * h.n)
    for i in range(q):
        if len(state.reservoir) < b:
            stages.append({"event": "growth_failed", "i": i, "reason": "reservoir exhausted"})
            mistuned = True
            break
        try:
            grown = grow_branch_set(h, state.reservoir, b, theta)
        except GrowthFailure as exc:
            stages.append(
                {
                    "event": "growth_failed",
                    "i": i,
                    "reason": str(exc),
                    "best_neighborhood": exc.best_neighborhood,
                }
            )
            mistuned = True
            break
        state.branch_sets.append(grown)
        state.reservoir -= grown
        stages.append(
            {
                "event": "branch_grown",
                "i": i,
                "size": len(grown),
                "nbr": _count_nbr_in(h, grown, set(range(h.n))),
            }
        )
        # D-repair: restore property (4) by returning the D-vertex with the
        # most reservoir neighbors to U until the inequality is strict again
        moves = 0
        while state.dump:
            nd = _count_nbr_in(h, state.dump, state.reservoir)
            if nd < (eps / 10.0) * len(state.dump):
                break
            back = max(
                state.dump,
                key=lambda v: (sum(1 for w in h.neighbors(v) if int(w) in state.reservoir), -v),
            )
            state.dump.discard(back)
            state.reservoir.add(back)
            moves += 1
        if moves:
            stages.append({"event": "d_repair", "i": i, "moved": moves})
        # U-repair: dump the non-expanding parts of the reservoir
        carved = carve_nonexpanding(h, state.reservoir, eps, min(carve_cap, len(state.reservoir)), budget)
        if carved:
            state.dump |= carved
            state.reservoir -= carved
            stages.append({"event": "carve", "i": i, "carved": len(carved)})
        state.check_invariants(eps)
        stages.append(
            {
                "event": "checkpoint",
                "i": i,
                "U": len(state.reservoir),
                "D": len(state.dump),
                "B_total": sum(len(s) for s in state.branch_sets),
            }
        )
    bad = state.bad_indices(eps, d_h)
    stages.append({"event": "bad", "count": len(bad), "q": q})
    if len(bad) >= 0.9 * q:
        mistuned = True
        stages.append({"event": "mistuned", "reason": f"|bad| = {len(bad)} >= 0.9q"})
    # optional extra branch set hitting every live reservoir neighborhood
    good_targets = [
        _nbr_set_in(h, state.branch_sets[i], state.reservoir)
        for i in range(len(state.branch_sets))
        if i not in bad
    ]
    good_targets = [t for t in good_targets if t]
    if good_targets and state.reservoir:
        try:
            core = hitting_connector(h, state.reservoir, good_targets, cfg, rng)
            extra = core
            if len(extra) < b:
                extra = _greedy_extend(h, state.reservoir, set(core), b)
            if _count_nbr_in(h, extra, set(range(h.n))) >= theta:
                state.branch_sets.append(frozenset(extra))
                state.reservoir -= extra
                stages.append({"event": "extra_set", "size": len(extra)})
            else:
                stages.append({"event": "extra_set_skipped", "reason": "neighborhood below theta"})
        except (HittingFailure, GrowthFailure, InputError) as exc:
            stages.append({"event": "extra_set_skipped", "reason": str(exc)})
    # connect non-adjacent pairs through the reservoir and absorb interiors
    max_len = math.ceil(
        (1.0 / cfg.eps1) * math.log(15.0 * h.n / cfg.t, cfg.log_base) ** 3
    )
    plan = connect_pairs(h, state.branch_sets, state.reservoir, max_len)
    verify_connection_plan(h, state.branch_sets, plan)
    for i, j, path in plan.pairs:
        interior = set(path.interior())
        state.branch_sets[i] = state.branch_sets[i] | frozenset(interior)
        state.reservoir -= interior
    stages.append(
        {
            "event": "connect",
            "connected": len(plan.pairs),
            "unconnected": len(plan.unconnected),
            "max_len": max_len,
        }
    )
    chosen = _family_subclique(h, state.branch_sets)
    stages.append({"event": "subfamily", "k": len(chosen)})
    return [state.branch_sets[i] for i in chosen], mistuned


def build_minor(g: Graph, cfg: BuilderConfig | None = None) -> MinorCertificate:
    """Full pipeline: extract an expanding host, grow and connect branch
    sets, and emit a verified clique-minor certificate.

    Mis-tuned attempts are harvested and retried with half the target k;
    the best certificate across attempts wins. Never returns an invalid
    certificate (a single-vertex certificate is the final fallback).
    """
    from .certify import verify_certificate

    cfg = cfg or BuilderConfig()
    if g.n < 3:
        raise InputError(f"builder needs n >= 3, got n={g.n}")
    if not is_connected_subset(g, frozenset(range(g.n))):
        raise InputError("builder requires a connected input graph")
    stages: list[dict] = []
    rng = random.Random(cfg.seed)
    budget = SearchBudget(seed=cfg.seed)
    report = extract_expander(g, RhoParams(cfg.eps1, cfg.t, cfg.log_base), budget)
    h, orig = report.subgraph, report.original_ids
    stages.append(
        {
            "event": "extract",
            "n": h.n,
            "m": h.m,
            "success": report.success,
            "iterations": report.iterations,
        }
    )
    d_h = max(1, min_degree(h))
    best: list[VertexSet] | None = None
    k, b, q = derive_parameters(h.n, d_h, cfg)
    for attempt in range(cfg.max_retries + 1):
        if attempt > 0:
            new_k = max(3, math.ceil(k / 2))
            if new_k == k:
                break
            k = new_k
            stages.append({"event": "retry", "new_k": k})
            logc = math.log(h.n, cfg.log_base) ** cfg.polylog_exp
            b = max(1, math.floor(cfg.eps**2 * h.n / (k * logc)))
            q = k
            if b * q > h.n:
                stages.append({"event": "retry_infeasible", "k": k})
                continue
        try:
            family, mistuned = _attempt(h, d_h, k, b, q, cfg, rng, budget, stages)
        except InvariantViolation as exc:
            stages.append({"event": "attempt_aborted", "reason": str(exc)})
            mistuned = True
            family = []
        mapped = [VertexSet(g.n, [orig[v] for v in s]) for s in family]
        if mapped and (best is None or len(mapped) > len(best)):
            best = mapped
        stages.append(
            {"event": "attempt_done", "k_target": k, "certified": len(mapped), "mistuned": mistuned}
        )
        if not mistuned:
            break
    if best is None:
        best = [VertexSet(g.n, [orig[0]])]
        stages.append({"event": "fallback_singleton"})
    cert = MinorCertificate(
        k=len(best),
        branch_sets=best,
        provenance={"config": cfg.to_json_dict(), "seed": cfg.seed, "stages": stages},
    )
    result = verify_certificate(g, cert)
    if not result.valid:
        raise InvariantViolation(f"builder produced an invalid certificate: {result.violations}")
    return cert


def baseline_random_contraction(g: Graph, k: int, seed: int) -> MinorCertificate:
    """Comparison baseline: k-center BFS Voronoi cells, then the same greedy
    pairwise-adjacent sub-family selection the pipeline ends with."""
    from collections import deque

    from .certify import verify_certificate

    if not 1 <= k <= g.n:
        raise InputError(f"need 1 <= k <= n, got k={k}, n={g.n}")
    rng = random.Random(seed)
    centers = sorted(rng.sample(range(g.n), k))
    label = [-1] * g.n
    queue = deque()
    for idx, c in enumerate(centers):
        label[c] = idx
        queue.append(c)
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            w = int(w)
            if label[w] < 0:
                label[w] = label[v]
                queue.append(w)
    cells: dict[int, set[int]] = {}
    for v in range(g.n):
        if label[v] >= 0:
            cells.setdefault(label[v], set()).add(v)
    family = [frozenset(cells[i]) for i in sorted(cells)]
    chosen = _family_subclique(g, family)
    sets = [VertexSet(g.n, family[i]) for i in chosen]
    if not sets:
        sets = [VertexSet(g.n, [0])]
    cert = MinorCertificate(
        k=len(sets),
        branch_sets=sets,
        provenance={"builder": "baseline_voronoi", "k": k, "seed": seed},
    )
    result = verify_certificate(g, cert)
    if not result.valid:
        raise InvariantViolation(f"baseline produced an invalid certificate: {result.violations}")
    return cert
