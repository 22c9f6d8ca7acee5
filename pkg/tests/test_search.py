import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rainbow_forge.constructions import build_appendix_g1, build_blowup, build_cplus, build_matching
from rainbow_forge.errors import BudgetExceeded, GraphInputError
from rainbow_forge.graph import Digraph, EdgeColoredGraph, TriPartition
from rainbow_forge.search import (
    CycleWitness,
    canonical_form,
    count_cycles,
    count_directed_cycles,
    count_properly_colored_cycles,
    count_rainbow_cycles,
    enumerate_cycles,
    find_closed_walk,
    find_cycle,
    find_directed_cycle,
    find_properly_colored_cycle,
    find_rainbow_cycle,
    has_closed_walk,
    is_closed_walk,
    is_properly_colored,
    is_rainbow,
    reversal_profile,
    walk_matrix,
)
from rainbow_forge.transforms import determined_colored_graph

from . import oracles
from .strategies import colored_graphs, digraphs, oriented_digraphs


def complete(n, color=lambda u, v: 0):
    return EdgeColoredGraph.from_edges(n, [(u, v, color(u, v)) for u, v in itertools.combinations(range(n), 2)])


def cycle_graph(colors):
    n = len(colors)
    return EdgeColoredGraph.from_edges(n, [(k, (k + 1) % n, c) for k, c in enumerate(colors)])


def directed_cycle(n):
    return [(k, (k + 1) % n) for k in range(n)]


RAINBOW_K4 = complete(4, lambda u, v: 4 * u + v)


# -- rainbow search --------------------------------------------------------------


def test_rainbow_c4_is_found_in_itself():
    w = find_rainbow_cycle(cycle_graph([0, 1, 2, 3]), 4)
    assert w is not None and w.canonical and w.vertices == (0, 1, 2, 3)
    assert len(set(w.colors)) == 4


def test_cplus_has_no_rainbow_c4():
    assert find_rainbow_cycle(build_cplus(9).graph, 4) is None


def test_monochromatic_k5_has_no_rainbow_c4():
    assert find_rainbow_cycle(complete(5), 4) is None


def test_rainbow_length_below_three_is_an_input_error():
    with pytest.raises(GraphInputError):
        find_rainbow_cycle(RAINBOW_K4, 2)
    with pytest.raises(GraphInputError):
        find_properly_colored_cycle(RAINBOW_K4, 2)


def test_rainbow_counts():
    assert count_rainbow_cycles(RAINBOW_K4, 3) == 4
    assert count_rainbow_cycles(build_matching(8).graph, 4) == 0
    assert count_rainbow_cycles(EdgeColoredGraph(5, ()), 3) == 0


@pytest.mark.parametrize("ell", [3, 4, 5, 6, 7, 8])
def test_cplus9_rainbow_counts_match_permutation_oracle(ell):
    G = build_cplus(9).graph
    expected = {3: 27, 4: 0, 5: 0, 6: 108, 7: 0, 8: 0}[ell]
    assert len(oracles.undirected_cycles(G, ell, "rainbow")) == expected
    assert count_rainbow_cycles(G, ell) == expected


# -- properly colored --------------------------------------------------------------


def test_alternating_c4_is_properly_colored():
    assert find_properly_colored_cycle(cycle_graph([0, 1, 0, 1]), 4) is not None


def test_monochromatic_c4_is_not_properly_colored():
    assert find_properly_colored_cycle(cycle_graph([2, 2, 2, 2]), 4) is None


@given(colored_graphs(min_n=3, max_n=6, max_colors=4), st.integers(3, 6))
def test_rainbow_witnesses_are_properly_colored(G, ell):
    for w in enumerate_cycles(G, ell, "rainbow"):
        assert is_rainbow(G, w.vertices)
        assert is_properly_colored(G, w.vertices)


# -- directed ------------------------------------------------------------------------


def test_blowup_directed_counts():
    D = build_blowup((2, 2, 2)).graph
    assert count_directed_cycles(D, 3) == 8 == len(oracles.directed_cycles(D, 3))
    assert count_directed_cycles(D, 4) == 0 == len(oracles.directed_cycles(D, 4))


def test_appendix_g1_has_no_directed_c5_but_has_triangles():
    D = build_appendix_g1((2, 2, 2)).graph
    assert count_directed_cycles(D, 5) == 0 == len(oracles.directed_cycles(D, 5))
    assert count_directed_cycles(D, 3) > 0


def test_directed_length_below_two_is_an_input_error():
    with pytest.raises(GraphInputError):
        find_directed_cycle(Digraph.from_arcs(3, directed_cycle(3)), 1)


def test_digon_is_a_directed_two_cycle():
    D = Digraph.from_arcs(2, [(0, 1), (1, 0)])
    assert find_directed_cycle(D, 2).vertices == (0, 1)


def test_color_kinds_are_rejected_on_digraphs():
    with pytest.raises(GraphInputError):
        count_cycles(Digraph.from_arcs(3, directed_cycle(3)), 3, "rainbow")


# -- enumeration ---------------------------------------------------------------------


def test_enumeration_examples():
    K4 = complete(4)
    assert len(list(enumerate_cycles(K4, 3))) == 4
    assert len(list(enumerate_cycles(K4, 4))) == 3
    assert list(enumerate_cycles(cycle_graph([0] * 5), 4)) == []


def test_enumeration_is_sorted_and_canonical():
    out = [w.vertices for w in enumerate_cycles(complete(6), 4)]
    assert out == sorted(out)
    assert all(v == canonical_form(v, False) for v in out)


def test_enumeration_beyond_default_capacity():
    # K_9 has 9*8*7*6*5*4/12 = 5040 six-cycles, more than one output buffer holds
    assert len(list(enumerate_cycles(complete(9), 6))) == 5040
    assert count_cycles(complete(9), 6) == 5040


def test_budget_exhaustion_reports_progress():
    with pytest.raises(BudgetExceeded) as info:
        count_cycles(complete(8), 6, budget=10)
    assert info.value.expansions > 10


@given(colored_graphs(min_n=3, max_n=6, max_colors=3), st.integers(3, 6), st.sampled_from(["all", "rainbow", "proper"]))
def test_enumeration_matches_permutation_oracle(G, ell, kind):
    got = [w.vertices for w in enumerate_cycles(G, ell, kind)]
    assert len(got) == len(set(got))
    assert set(got) == oracles.undirected_cycles(G, ell, kind)


@given(digraphs(max_n=6), st.integers(2, 6))
def test_directed_enumeration_matches_permutation_oracle(D, ell):
    got = [w.vertices for w in enumerate_cycles(D, ell)]
    assert len(got) == len(set(got))
    assert set(got) == oracles.directed_cycles(D, ell)


@given(colored_graphs(min_n=3, max_n=7, max_colors=4), st.integers(3, 6))
def test_rainbow_within_proper_within_all(G, ell):
    r = count_rainbow_cycles(G, ell)
    p = count_properly_colored_cycles(G, ell)
    a = count_cycles(G, ell)
    assert r <= p <= a


@given(oriented_digraphs(max_n=7), st.integers(3, 6))
def test_directed_count_equals_rainbow_count_of_determined_graph(D, ell):
    assert count_directed_cycles(D, ell) == count_rainbow_cycles(determined_colored_graph(D), ell)


@given(colored_graphs(min_n=3, max_n=7, max_colors=3), st.integers(3, 6))
def test_find_agrees_with_count(G, ell):
    for kind in ("all", "rainbow", "proper"):
        w = find_cycle(G, ell, kind)
        assert (w is None) == (count_cycles(G, ell, kind) == 0)
        if w is not None:
            assert w.canonical


def test_canonical_form():
    assert canonical_form((3, 1, 2), directed=True) == (1, 2, 3)
    assert canonical_form((3, 2, 1), directed=True) == (1, 3, 2)
    assert canonical_form((3, 2, 1), directed=False) == (1, 2, 3)
    assert CycleWitness((0, 2, 1)).canonical is False


# -- closed walks --------------------------------------------------------------------


def test_directed_triangle_walk_lengths():
    D = Digraph.from_arcs(3, directed_cycle(3))
    assert has_closed_walk(D, 3)
    assert not has_closed_walk(D, 4)
    assert has_closed_walk(D, 6)


def test_vertex_on_triangle_and_square_has_seven_walk():
    # triangle 0-1-2 and square 0-3-4-5 share vertex 0
    D = Digraph.from_arcs(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 0)])
    assert has_closed_walk(D, 7)
    walk = find_closed_walk(D, 7, start=0)
    assert is_closed_walk(D, walk) and len(walk) == 7
    assert not has_closed_walk(D, 5)


def test_arcless_graph_has_no_walks():
    D = Digraph(4, ())
    assert not any(has_closed_walk(D, ell) for ell in range(1, 10))
    assert find_closed_walk(D, 3) is None


def test_walk_length_zero_is_an_input_error():
    with pytest.raises(GraphInputError):
        has_closed_walk(Digraph(2, ()), 0)


@given(digraphs(max_n=6), st.integers(1, 12))
def test_walk_detection_matches_state_oracle(D, ell):
    assert has_closed_walk(D, ell) == oracles.closed_walk_exists(D, ell)
    walk = find_closed_walk(D, ell)
    assert (walk is not None) == has_closed_walk(D, ell)
    if walk is not None:
        assert len(walk) == ell and is_closed_walk(D, walk)


@given(digraphs(max_n=6), st.integers(1, 40))
def test_walk_matrix_matches_integer_power(D, ell):
    A = D.matrix.astype(np.int64)
    P = np.eye(D.n, dtype=np.int64)
    for _ in range(ell):
        P = np.minimum(P @ A, 1)
    assert np.array_equal(walk_matrix(D, ell), P.astype(bool))


@given(st.data(), digraphs(min_n=2, max_n=6), st.integers(1, 8))
def test_closed_walks_are_monotone_under_arc_addition(data, D, ell):
    missing = [(u, v) for u in range(D.n) for v in range(D.n) if u != v and not D.has_arc(u, v)]
    if not missing:
        return
    extra = data.draw(st.sampled_from(missing))
    bigger = Digraph.from_arcs(D.n, D.arcs + (extra,))
    assert has_closed_walk(D, ell) <= has_closed_walk(bigger, ell)


@given(digraphs(max_n=6), st.integers(1, 6), st.integers(1, 6))
def test_closed_walks_compose_at_a_shared_vertex(D, a, b):
    for v in range(D.n):
        wa = find_closed_walk(D, a, start=v)
        wb = find_closed_walk(D, b, start=v)
        if wa is not None and wb is not None:
            joined = wa + wb
            assert is_closed_walk(D, joined)
            assert has_closed_walk(D, a + b)


# -- reversals -----------------------------------------------------------------------


P2 = TriPartition((0, 1, 2, 0, 1))


def test_transversal_triangle_has_no_reversals():
    prof = reversal_profile((0, 1, 2), P2)
    assert prof.types == (0, 1, 2)
    assert prof.backward == prof.forward == 0


def test_square_between_two_parts_has_two_of_each():
    # v0 v1 v0' v1' with v0, v0' in V0 and v1, v1' in V1
    prof = reversal_profile((0, 1, 3, 4), P2)
    assert prof.types == (0, 0, 0, 0)
    assert prof.backward == 2 and prof.forward == 2
    kinds = dict(prof.positions)
    # the edge pair (e_0, e_1) meets at vertex 1, which lies in V1
    assert kinds[0] == "backward" and kinds[1] == "forward"


def test_edge_inside_a_part_has_no_type():
    with pytest.raises(GraphInputError):
        reversal_profile((0, 3, 1), P2)


def tripartite_cycles():
    return st.integers(3, 9).flatmap(
        lambda ell: st.lists(st.integers(0, 2), min_size=ell, max_size=ell).filter(
            lambda parts: all(parts[k] != parts[(k + 1) % len(parts)] for k in range(len(parts)))
        )
    )


def _independent_reversals(parts):
    # the vertex shared by e_k and e_{k+1} is parts[k+1]; edge type is the lower cyclic end
    ell = len(parts)

    def etype(a, b):
        return a if (a + 1) % 3 == b else b

    types = [etype(parts[k], parts[(k + 1) % ell]) for k in range(ell)]
    back = fwd = 0
    for k in range(ell):
        if types[k] == types[(k + 1) % ell]:
            if parts[(k + 1) % ell] == (types[k] + 1) % 3:
                back += 1
            else:
                fwd += 1
    return back, fwd


@given(tripartite_cycles())
def test_reversal_parity(parts):
    ell = len(parts)
    P = TriPartition(tuple(parts))
    prof = reversal_profile(tuple(range(ell)), P)
    assert (prof.backward, prof.forward) == _independent_reversals(parts)
    assert prof.backward == prof.forward
    if ell % 3:
        assert prof.backward >= 1
