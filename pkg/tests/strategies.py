"""Hypothesis strategies for small graphs."""

from __future__ import annotations

import itertools

from hypothesis import strategies as st

from rainbow_forge.graph import Digraph, EdgeColoredGraph, TriPartition


@st.composite
def colored_graphs(draw, min_n=1, max_n=7, max_colors=5):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    edges = [(u, v, draw(st.integers(0, max_colors - 1))) for u, v in chosen]
    return EdgeColoredGraph.from_edges(n, edges)


@st.composite
def oriented_digraphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    arcs = [(u, v) if draw(st.booleans()) else (v, u) for u, v in chosen]
    return Digraph.from_arcs(n, arcs)


@st.composite
def digraphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    arcs = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Digraph.from_arcs(n, arcs)


@st.composite
def partitions(draw, n):
    return TriPartition(tuple(draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))))


@st.composite
def permutations(draw, n):
    return draw(st.permutations(list(range(n))))
