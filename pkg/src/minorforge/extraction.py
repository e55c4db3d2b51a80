"""Extraction of dense robustly-expanding subgraphs.

The refinement loop alternates min-degree peeling with the robust
expansion falsifier: every witness cut splits the candidate and the
denser side is kept. On exit the report records, with exact rational
arithmetic, whether the classical postconditions (average degree at least
half the input's, minimum degree at least half the average) hold.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapabilityError, InputError, InvariantViolation
from .expansion import RhoParams, SearchBudget, Verdict, check_robust_expander
from .graph import Graph, average_degree, induced_subgraph, min_degree


@dataclass
class ExtractionReport:
    subgraph: Graph
    original_ids: tuple[int, ...]
    avg_degree_ratio: Fraction
    min_degree_ok: bool
    expander_verdict: Verdict
    iterations: int
    success: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.subgraph.n,
            "m": self.subgraph.m,
            "original_ids": list(self.original_ids),
            "avg_degree_ratio": [
                self.avg_degree_ratio.numerator,
                self.avg_degree_ratio.denominator,
            ],
            "min_degree_ok": self.min_degree_ok,
            "iterations": self.iterations,
            "success": self.success,
            "expander_verdict": self.expander_verdict.to_json_dict(),
        }


def peel_min_degree(g: Graph, factor, *, with_ids: bool = False):
    """Repeatedly delete a vertex of degree < factor * d(current graph).

    The removed vertex is always the (degree, id)-smallest violating one;
    comparisons are exact rationals. For factor <= 1/2 the classical
    peeling lemma guarantees a nonempty residue whose average degree has
    not decreased.
    """
    if g.n == 0:
        raise InputError("cannot peel the empty graph")
    factor = Fraction(factor)
    if factor <= 0:
        raise InputError(f"peel factor must be positive, got {factor}")
    deg = [g.degree(v) for v in range(g.n)]
    alive = [True] * g.n
    n_alive, m_alive = g.n, g.m
    heap = [(deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    p, q = factor.numerator, factor.denominator
    while n_alive > 0 and heap:
        dv, v = heap[0]
        if not alive[v] or dv != deg[v]:
            heapq.heappop(heap)
            continue
        # deg < factor * 2m/n  <=>  deg * q * n < p * 2m
        if not dv * q * n_alive < p * 2 * m_alive:
            break
        heapq.heappop(heap)
        alive[v] = False
        n_alive -= 1
        m_alive -= deg[v]
        for w in g.neighbors(v):
            w = int(w)
            if alive[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    if n_alive == 0:
        if factor <= Fraction(1, 2):
            raise InvariantViolation("peeling at factor <= 1/2 emptied the graph")
        raise CapabilityError(f"peeling at factor {factor} left an empty residue")
    keep = [v for v in range(g.n) if alive[v]]
    sub, ids = induced_subgraph(g, keep)
    return (sub, ids) if with_ids else sub


def extract_expander(
    g: Graph, p: RhoParams, budget: SearchBudget | None = None
) -> ExtractionReport:
    """Iteratively peel and cut until the robust-expansion falsifier is silent.

    Keeps the denser side of every violated cut (ties keep the witness
    side). If the loop exhausts its iteration budget, the best candidate
    seen (by average degree) is returned with success=False.
    """
    if g.n == 0:
        raise InputError("cannot extract from the empty graph")
    budget = budget or SearchBudget()
    max_iter = budget.max_iterations
    if max_iter is None:
        max_iter = max(1, math.ceil(10 * math.log2(max(2, g.n))))
    d_in = average_degree(g)
    cur, cur_ids = g, tuple(range(g.n))
    best: tuple[Fraction, Graph, tuple[int, ...], Verdict] | None = None
    iterations = 0
    verdict: Verdict
    while True:
        cur, peel_ids = peel_min_degree(cur, Fraction(1, 2), with_ids=True)
        cur_ids = tuple(cur_ids[i] for i in peel_ids)
        verdict = check_robust_expander(cur, p, budget)
        d_cur = average_degree(cur)
        if best is None or d_cur > best[0]:
            best = (d_cur, cur, cur_ids, verdict)
        if verdict.passed or iterations >= max_iter:
            break
        iterations += 1
        x = verdict.witness.members
        dropped = set(tuple(e) for e in (verdict.witness_edges or []))
        reach = set(x)
        for v in x:
            for w in cur.neighbors(v):
                w = int(w)
                if w in x:
                    continue
                e = (min(v, w), max(v, w))
                if e not in dropped:
                    reach.add(w)
        side_x, ids_x = induced_subgraph(cur, reach)
        side_rest, ids_rest = induced_subgraph(cur, set(range(cur.n)) - x)
        dx = average_degree(side_x) if side_x.n else Fraction(0)
        dr = average_degree(side_rest) if side_rest.n else Fraction(0)
        if dx >= dr:
            cur = side_x
            cur_ids = tuple(cur_ids[i] for i in ids_x)
        else:
            cur = side_rest
            cur_ids = tuple(cur_ids[i] for i in ids_rest)
    if not verdict.passed and best is not None:
        _, cur, cur_ids, verdict = best
    ratio = average_degree(cur) / d_in if d_in > 0 else Fraction(1)
    dmin = min_degree(cur)
    min_ok = dmin * cur.n >= cur.m  # delta >= d(H)/2, cross-multiplied
    success = verdict.passed and ratio >= Fraction(1, 2) and min_ok
    return ExtractionReport(
        subgraph=cur,
        original_ids=cur_ids,
        avg_degree_ratio=ratio,
        min_degree_ok=min_ok,
        expander_verdict=verdict,
        iterations=iterations,
        success=success,
    )


def calibrate_eps1(g: Graph, t: float, budget: SearchBudget | None = None) -> float:
    """Largest eps1 in [1e-4, 1] the robust falsifier cannot refute.

    Log-space bisection to roughly two significant digits; returns the
    largest value actually tested and found passing (0.0 if even the
    floor fails).
    """
    if g.n == 0:
        raise InputError("cannot calibrate on the empty graph")
    budget = budget or SearchBudget()

    def passes(eps1: float) -> bool:
        return check_robust_expander(g, RhoParams(eps1, t), budget).passed

    lo, hi = 1e-4, 1.0
    if passes(hi):
        return hi
    if not passes(lo):
        return 0.0
    while hi / lo > 1.05:
        mid = math.sqrt(lo * hi)
        if passes(mid):
            lo = mid
        else:
            hi = mid
    return lo
