import math
import random

import pytest

from minorforge import (
    BuilderConfig,
    Graph,
    GrowthFailure,
    HittingFailure,
    InputError,
    ParameterError,
    baseline_random_contraction,
    build_minor,
    carve_nonexpanding,
    derive_parameters,
    grow_branch_set,
    hitting_connector,
    verify_certificate,
)
from helpers import complete, cycle, path_graph, random_connected_graph, star


# ---------------------------------------------------------------------------
# parameter derivation


def test_derive_parameters_vacuous_formula_clamps_to_3():
    # log^10 makes the k formula vacuous at any feasible scale
    k, b, q = derive_parameters(10**6, 100, BuilderConfig())
    assert k == 3 and q == 3 and b >= 1


def test_derive_parameters_example_b1():
    cfg = BuilderConfig(eps=0.3, polylog_exp=1, target_k=5)
    k, b, q = derive_parameters(1000, 8, cfg)
    assert (k, b, q) == (5, 1, 5)


def test_derive_parameters_degenerate_n():
    with pytest.raises(ParameterError):
        derive_parameters(2, 1, BuilderConfig())
    with pytest.raises(InputError):
        derive_parameters(1, 1, BuilderConfig())


def test_derive_parameters_infeasible_target():
    with pytest.raises(ParameterError, match="smaller k"):
        derive_parameters(10, 3, BuilderConfig(target_k=20))


def test_builder_config_validation():
    with pytest.raises(InputError):
        BuilderConfig(eps=0.0)
    with pytest.raises(InputError):
        BuilderConfig(eps=1.0)
    with pytest.raises(InputError):
        BuilderConfig(polylog_exp=0)
    with pytest.raises(InputError):
        BuilderConfig(target_k=0)


# ---------------------------------------------------------------------------
# branch-set growth


def test_grow_b1_takes_max_degree_vertex():
    g = star(5)
    grown = grow_branch_set(g, range(6), 1, 0.0)
    assert grown == {0}


def test_grow_complete_graph_meets_theta():
    grown = grow_branch_set(complete(10), range(10), 3, 7.0)
    assert len(grown) == 3


def test_grow_star_fails_with_best_value():
    with pytest.raises(GrowthFailure) as exc:
        grow_branch_set(star(9), range(10), 2, 9.0)
    assert exc.value.best_neighborhood == 8


def test_grow_requires_capacity():
    with pytest.raises(InputError):
        grow_branch_set(complete(4), {0, 1}, 3, 0.0)


def test_grow_stays_connected_inside_reservoir():
    rng = random.Random(5)
    for _ in range(10):
        g = random_connected_graph(rng.randint(6, 20), rng.uniform(0.2, 0.5), rng)
        pool = set(range(g.n))
        b = rng.randint(1, 3)
        try:
            grown = grow_branch_set(g, pool, b, 0.0)
        except GrowthFailure:
            continue
        from minorforge.graph import is_connected_subset

        assert len(grown) == b
        assert is_connected_subset(g, grown)


# ---------------------------------------------------------------------------
# carving


def test_carve_clique_reservoir_is_empty():
    assert carve_nonexpanding(complete(8), range(8), 0.5, 4) == frozenset()


def test_carve_isolated_vertex():
    g = Graph(5, [(0, 1), (1, 2), (2, 3)])
    carved = carve_nonexpanding(g, range(5), 0.5, 2)
    assert 4 in carved


def test_carve_cap_zero():
    assert carve_nonexpanding(complete(6), range(6), 0.5, 0) == frozenset()


def test_carve_cap_exceeding_pool_rejected():
    with pytest.raises(InputError):
        carve_nonexpanding(complete(4), range(4), 0.5, 10)


def test_carve_results_satisfy_dump_bound():
    # every carved chunk keeps |N(D_chunk) ∩ U'| < eps/10 |D_chunk|
    rng = random.Random(11)
    for _ in range(10):
        g = random_connected_graph(rng.randint(8, 24), rng.uniform(0.1, 0.3), rng)
        pool = set(range(g.n))
        carved = carve_nonexpanding(g, pool, 0.4, len(pool) // 2)
        if carved:
            rest = pool - carved
            nbr = {int(w) for v in carved for w in g.neighbors(v)} & rest
            assert len(nbr) < (0.4 / 10) * len(carved)


# ---------------------------------------------------------------------------
# hitting connector


def test_hitting_single_target():
    core = hitting_connector(cycle(8), range(8), [{3}], BuilderConfig(seed=0))
    assert 3 in core


def test_hitting_cycle12_three_targets():
    core = hitting_connector(cycle(12), range(12), [{0}, {4}, {8}], BuilderConfig(seed=0))
    from minorforge.graph import is_connected_subset

    assert {0, 4, 8} <= set(core) and len(core) <= 12
    assert is_connected_subset(cycle(12), frozenset(core))


def test_hitting_unreachable_target_names_index():
    g = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    with pytest.raises(HittingFailure) as exc:
        hitting_connector(g, {0, 1, 2, 4}, [{0}, {4}], BuilderConfig(seed=0))
    assert exc.value.target_index in (0, 1)


def test_hitting_validates_targets():
    with pytest.raises(InputError):
        hitting_connector(cycle(6), {0, 1, 2}, [{4}], BuilderConfig())
    with pytest.raises(InputError):
        hitting_connector(cycle(6), {0, 1, 2}, [set()], BuilderConfig())


# ---------------------------------------------------------------------------
# full pipeline


@pytest.mark.parametrize("n", range(3, 10))
def test_build_complete_graph_exact(n):
    cert = build_minor(complete(n), BuilderConfig(target_k=n, seed=1))
    assert cert.k == n
    assert all(len(b) == 1 for b in cert.branch_sets)


def test_build_requires_connected():
    with pytest.raises(InputError):
        build_minor(Graph(4, [(0, 1), (2, 3)]), BuilderConfig())
    with pytest.raises(InputError):
        build_minor(Graph(2, [(0, 1)]), BuilderConfig())


def test_build_certificates_always_verify():
    rng = random.Random(3)
    for seed in range(12):
        n = rng.randint(5, 40)
        g = random_connected_graph(n, rng.uniform(0.1, 0.5), rng)
        cfg = BuilderConfig(seed=seed, target_k=rng.choice([None, 4, 8]))
        try:
            cert = build_minor(g, cfg)
        except ParameterError:
            continue
        rep = verify_certificate(g, cert)
        assert rep.valid and rep.k == cert.k >= 1


def test_build_deterministic():
    g = random_connected_graph(30, 0.2, random.Random(9))
    a = build_minor(g, BuilderConfig(seed=5))
    b = build_minor(g, BuilderConfig(seed=5))
    assert [sorted(x.members) for x in a.branch_sets] == [sorted(x.members) for x in b.branch_sets]


def test_build_stage_log_keeps_invariant_chain():
    # on an expanding input, |D| <= 10/(9 eps) |B| at every checkpoint
    g = complete(24)
    cfg = BuilderConfig(seed=2, target_k=6)
    cert = build_minor(g, cfg)
    checkpoints = [e for e in cert.provenance["stages"] if e["event"] == "checkpoint"]
    assert checkpoints
    for ev in checkpoints:
        assert ev["D"] <= (10 / (9 * cfg.eps)) * max(1, ev["B_total"])
        assert ev["U"] + ev["D"] + ev["B_total"] == 24


def test_build_retry_halves_target():
    # a path cannot satisfy an ambitious target: retries should fire and the
    # final certificate must still verify
    g = path_graph(40)
    cert = build_minor(g, BuilderConfig(seed=1, target_k=12))
    events = [e["event"] for e in cert.provenance["stages"]]
    assert "retry" in events
    assert verify_certificate(g, cert).valid
    assert cert.k <= 2  # a path has no K3 minor


def test_build_monotone_under_best_of_seeds():
    g = random_connected_graph(60, 0.15, random.Random(21))
    best = 0
    sizes = []
    for seed in range(4):
        cert = build_minor(g, BuilderConfig(seed=seed))
        best = max(best, cert.k)
        sizes.append(best)
    assert sizes == sorted(sizes)


# ---------------------------------------------------------------------------
# baseline


def test_baseline_complete():
    assert baseline_random_contraction(complete(7), 7, 0).k == 7


def test_baseline_path():
    assert baseline_random_contraction(path_graph(4), 2, 0).k == 2


def test_baseline_cycle9_three_arcs():
    cert = baseline_random_contraction(cycle(9), 3, 0)
    assert cert.k == 3


def test_baseline_validates_k():
    with pytest.raises(InputError):
        baseline_random_contraction(complete(4), 5, 0)


def test_baseline_certificates_verify():
    rng = random.Random(8)
    for seed in range(8):
        g = random_connected_graph(rng.randint(4, 30), rng.uniform(0.1, 0.4), rng)
        k = rng.randint(1, max(1, g.n // 2))
        cert = baseline_random_contraction(g, k, seed)
        assert verify_certificate(g, cert).valid
        assert 1 <= cert.k <= k
