import numpy as np
import pytest
from hypothesis import given, strategies as st

from rainbow_forge.graph import EdgeColoredGraph, is_oriented
from rainbow_forge.suite import (
    _min_color_degrees,
    explore_threshold,
    random_balanced_tripartite,
    random_colored_graph,
    random_cycle,
    random_oriented_digraph,
    run_verification_suite,
)

from . import oracles


@pytest.fixture(scope="module")
def small_suite():
    return run_verification_suite(max_n=8, random_instances=8)


def test_small_suite_has_no_failures(small_suite):
    counts = small_suite.counts()
    assert counts["fail"] == 0 and counts["pass"] > 100
    assert small_suite.config["max_n"] == 8


def test_suite_is_deterministic(small_suite):
    again = run_verification_suite(max_n=8, random_instances=8)
    assert again.to_dict() == small_suite.to_dict()


def test_infeasible_orders_are_skipped():
    suite = run_verification_suite(max_n=6, random_instances=2)
    skipped = {c.name for c in suite.checks if c.status == "skipped"}
    assert {"matching.all", "hard.all"} <= skipped


def test_tiny_budget_degrades_to_inconclusive():
    suite = run_verification_suite(max_n=6, random_instances=2, budget=1)
    counts = suite.counts()
    assert counts["fail"] == 0 and counts["inconclusive"] > 0
    for c in suite.checks:
        if c.status == "inconclusive":
            assert "expansions" in c.detail


@given(st.integers(1, 9), st.floats(0, 1), st.integers(0, 2**32 - 1))
def test_random_generators(n, p, seed):
    rng = np.random.default_rng(seed)
    assert is_oriented(random_oriented_digraph(n, p, rng))
    G = random_colored_graph(n, p, 3, rng)
    assert all(0 <= c < 3 for *_, c in G.edges)
    H, P = random_balanced_tripartite(n, p, 4, rng)
    assert max(P.sizes) - min(P.sizes) <= 1
    assert all(P[u] != P[v] for u, v, _ in H.edges)


@given(st.integers(0, 2**32 - 1), st.integers(3, 6))
def test_random_cycle_is_a_cycle(seed, ell):
    rng = np.random.default_rng(seed)
    G = random_colored_graph(8, 0.6, 3, rng)
    cyc = random_cycle(G, ell, rng, tries=200)
    if cyc is not None:
        assert len(set(cyc)) == ell
        assert all(G.has_edge(cyc[i], cyc[(i + 1) % ell]) for i in range(ell))


def test_batched_min_color_degree_matches_oracle():
    rng = np.random.default_rng(3)
    n, k = 6, 4
    iu = np.triu_indices(n, 1)
    upper = rng.integers(0, k, size=(50, len(iu[0])))
    full = np.full((50, n, n), -1, dtype=np.int64)
    full[:, iu[0], iu[1]] = upper
    full[:, iu[1], iu[0]] = upper
    got = _min_color_degrees(full, k)
    for b in range(50):
        G = EdgeColoredGraph.from_edges(n, [(int(u), int(v), int(c)) for u, v, c in zip(iu[0], iu[1], upper[b])])
        assert got[b] == min(oracles.color_degree(G, v) for v in range(n))


def test_explore_is_deterministic_and_accounted():
    a = explore_threshold(7, 4, 5, seed=2)
    b = explore_threshold(7, 4, 5, seed=2)
    assert a.to_dict() == b.to_dict()
    assert a.accepted == 5 and a.attempts >= 5
    assert a.hits + a.inconclusive <= a.accepted
    assert a.palette_size == 4 and a.threshold == "12/3"


def test_explore_gives_up_at_the_attempt_cap():
    rep = explore_threshold(9, 4, 3, max_attempts=10, batch=4)
    assert rep.attempts == 10 and rep.accepted <= 3
    assert explore_threshold(9, 4, 0).hit_rate is None
