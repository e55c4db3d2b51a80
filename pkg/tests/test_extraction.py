import random
from fractions import Fraction

import pytest

from minorforge import (
    CapabilityError,
    Graph,
    InputError,
    RhoParams,
    SearchBudget,
    average_degree,
    calibrate_eps1,
    extract_expander,
    min_degree,
    peel_min_degree,
)
from helpers import complete, cycle, random_connected_graph, star


def two_cliques_with_bridge(size=20):
    edges = [(i, j) for i in range(size) for j in range(i + 1, size)]
    edges += [(size + i, size + j) for i in range(size) for j in range(i + 1, size)]
    edges.append((0, size))
    return Graph(2 * size, edges)


# ---------------------------------------------------------------------------
# peeling


def test_peel_removes_pendant_from_clique():
    g = Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
    assert peel_min_degree(g, Fraction(1, 2)) == complete(4)


def test_peel_fixed_point_on_regular():
    assert peel_min_degree(complete(4), Fraction(1, 2)) == complete(4)


def test_peel_keeps_star():
    # d = 5/3, threshold 5/6: every leaf has degree 1 >= 5/6
    g = star(5)
    assert peel_min_degree(g, Fraction(1, 2)) == g


def test_peel_rejects_empty_graph_and_bad_factor():
    with pytest.raises(InputError):
        peel_min_degree(Graph(0, []), Fraction(1, 2))
    with pytest.raises(InputError):
        peel_min_degree(complete(3), 0)


def test_peel_with_ids():
    g = Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
    sub, ids = peel_min_degree(g, Fraction(1, 2), with_ids=True)
    assert ids == (0, 1, 2, 3)


@pytest.mark.parametrize("seed", range(15))
def test_peel_postconditions_exact(seed):
    rng = random.Random(seed)
    g = random_connected_graph(rng.randint(2, 30), rng.uniform(0.1, 0.5), rng)
    h = peel_min_degree(g, Fraction(1, 2))
    assert h.n >= 1
    # min degree >= factor * average degree, cross-multiplied
    assert 2 * min_degree(h) * h.n >= 2 * h.m
    # average degree did not drop
    assert average_degree(h) >= average_degree(g)


# ---------------------------------------------------------------------------
# extraction


def test_extract_fixed_point_when_already_expanding():
    rep = extract_expander(complete(16), RhoParams(0.01, 4.0))
    assert rep.success and rep.iterations == 0
    assert rep.subgraph == complete(16)
    assert rep.avg_degree_ratio == 1


def test_extract_two_cliques_picks_one():
    # the bridge cut violates robust expansion once the deletion budget
    # covers the single bridge edge (eps1 = 0.2 suffices at this scale)
    rep = extract_expander(two_cliques_with_bridge(), RhoParams(0.2, 4.0))
    assert rep.subgraph == complete(20)
    assert rep.success
    assert rep.avg_degree_ratio >= Fraction(1, 2)


def test_extract_k2():
    rep = extract_expander(Graph(2, [(0, 1)]), RhoParams(0.1, 4.0))
    assert rep.success and rep.subgraph.n == 2


def test_extract_rejects_empty():
    with pytest.raises(InputError):
        extract_expander(Graph(0, []), RhoParams(0.1, 4.0))


@pytest.mark.parametrize("seed", range(10))
def test_extract_successful_postconditions_exact(seed):
    rng = random.Random(100 + seed)
    g = random_connected_graph(rng.randint(4, 40), rng.uniform(0.1, 0.4), rng)
    rep = extract_expander(g, RhoParams(0.1, 4.0))
    h = rep.subgraph
    assert len(rep.original_ids) == h.n
    # reported subgraph is an induced subgraph of g on original_ids
    for a in range(h.n):
        for b in range(a + 1, h.n):
            assert h.has_edge(a, b) == g.has_edge(rep.original_ids[a], rep.original_ids[b])
    if rep.success:
        # d(H) >= d(G)/2 and delta(H) >= d(H)/2, exact integer arithmetic
        assert 2 * h.m * g.n >= g.m * h.n
        assert min_degree(h) * h.n >= h.m
        assert rep.min_degree_ok


def test_extract_idempotent_on_success():
    rep = extract_expander(two_cliques_with_bridge(), RhoParams(0.2, 4.0))
    again = extract_expander(rep.subgraph, RhoParams(0.2, 4.0))
    assert again.iterations <= 1
    assert again.subgraph == rep.subgraph


# ---------------------------------------------------------------------------
# calibration


def test_calibrate_k16_at_least_001():
    assert calibrate_eps1(complete(16), 4.0) >= 0.01


def test_calibrate_cycle_not_above_complete():
    # both saturate the [1e-4, 1] search window at this scale
    c = calibrate_eps1(cycle(16), 4.0)
    k = calibrate_eps1(complete(16), 4.0)
    assert c <= k
    assert k == 1.0


def test_calibrate_edgeless_is_zero():
    assert calibrate_eps1(Graph(8, []), 4.0) == 0.0


def test_calibrate_finds_intermediate_value():
    # two cliques with a bridge fail at large eps1 but pass at small:
    # calibration must land strictly inside the window
    value = calibrate_eps1(two_cliques_with_bridge(), 4.0, SearchBudget())
    assert 1e-4 <= value < 1.0
