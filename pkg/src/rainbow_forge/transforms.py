"""Passing between edge-colored graphs and digraphs.

An associated digraph sends one arc from each vertex into each of its color
classes. A determined colored graph turns every arc ``(v, w)`` into the edge
``{v, w}`` colored ``w``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, GraphInputError
from .graph import Digraph, EdgeColoredGraph, is_oriented
from .search import (
    DEFAULT_BUDGET,
    canonical_form,
    count_directed_cycles,
    count_properly_colored_cycles,
    count_rainbow_cycles,
    enumerate_cycles,
    is_rainbow,
)


@dataclass(frozen=True)
class RepresentativePolicy:
    """How to pick the representative neighbor of a color class.

    ``lowest`` takes the smallest vertex id. ``random`` draws uniformly with
    ``seed`` and exists only for exploratory stress runs.
    """

    mode: str = "lowest"
    seed: int | None = None

    def __post_init__(self):
        if self.mode not in ("lowest", "random"):
            raise GraphInputError(f"unknown representative policy {self.mode!r}")


LOWEST = RepresentativePolicy()


def associated_digraph(G: EdgeColoredGraph, policy: RepresentativePolicy = LOWEST) -> Digraph:
    rng = np.random.default_rng(policy.seed) if policy.mode == "random" else None
    arcs = []
    for v in range(G.n):
        classes: dict[int, list[int]] = {}
        for w in G.adjacency[v]:
            classes.setdefault(int(G.color_matrix[v, w]), []).append(w)
        for color in sorted(classes):
            members = classes[color]
            if rng is None:
                arcs.append((v, min(members)))
            else:
                arcs.append((v, int(members[rng.integers(len(members))])))
    return Digraph(G.n, tuple(arcs))


def determined_colored_graph(D: Digraph) -> EdgeColoredGraph:
    """Edge ``{v, w}`` colored ``w`` for every arc ``(v, w)``; color ``i`` is named ``v{i}``."""
    if not is_oriented(D):
        raise ContractViolation("the determined colored graph is simple only for oriented digraphs")
    heads = sorted({w for _, w in D.arcs})
    return EdgeColoredGraph(
        D.n, tuple((v, w, w) for v, w in D.arcs), tuple((w, f"v{w}") for w in heads)
    )


@dataclass(frozen=True)
class LiReport:
    length: int
    directed_count: int
    rainbow_count: int
    properly_colored_count: int

    @property
    def injective_bound_holds(self) -> bool:
        return self.directed_count <= self.rainbow_count

    @property
    def proper_equals_rainbow(self) -> bool:
        return self.rainbow_count == self.properly_colored_count

    @property
    def ok(self) -> bool:
        return self.injective_bound_holds and self.proper_equals_rainbow

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "directed_count": self.directed_count,
            "rainbow_count": self.rainbow_count,
            "properly_colored_count": self.properly_colored_count,
            "injective_bound_holds": self.injective_bound_holds,
            "proper_equals_rainbow": self.proper_equals_rainbow,
        }


def verify_li_correspondence(D: Digraph, ell: int, budget: int = DEFAULT_BUDGET) -> LiReport:
    """Count directed cycles of ``D`` and rainbow / properly colored cycles of its colored graph.

    The three counts come from three separate searches.
    """
    G = determined_colored_graph(D)
    return LiReport(
        ell,
        count_directed_cycles(D, ell, budget),
        count_rainbow_cycles(G, ell, budget),
        count_properly_colored_cycles(G, ell, budget),
    )


def directed_to_rainbow_map(D: Digraph, ell: int, budget: int = DEFAULT_BUDGET) -> dict:
    """Explicit map from directed ``ell``-cycles to cycles of the determined colored graph.

    Keys are canonical directed vertex sequences and values the canonical
    undirected sequence of the same cycle. Raises if two directed cycles
    collide or an image is not rainbow.
    """
    G = determined_colored_graph(D)
    mapping = {}
    images = set()
    for cyc in enumerate_cycles(D, ell, budget=budget):
        image = canonical_form(cyc.vertices, directed=False)
        if image in images:
            raise ContractViolation(f"two directed cycles map onto {image}")
        if not is_rainbow(G, image):
            raise ContractViolation(f"image {image} of directed cycle {cyc.vertices} is not rainbow")
        images.add(image)
        mapping[cyc.vertices] = image
    return mapping


@dataclass(frozen=True)
class NonRainbowReport:
    n: int
    length: int
    directed_count: int
    non_rainbow: int
    bound: int
    example: tuple[int, ...] | None

    @property
    def holds(self) -> bool:
        return self.non_rainbow <= self.bound

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "length": self.length,
            "directed_count": self.directed_count,
            "non_rainbow": self.non_rainbow,
            "bound": self.bound,
            "holds": self.holds,
            "example": None if self.example is None else list(self.example),
        }


def non_rainbow_bound_check(
    G: EdgeColoredGraph,
    ell: int,
    policy: RepresentativePolicy = LOWEST,
    budget: int = DEFAULT_BUDGET,
) -> NonRainbowReport:
    """Count directed ``ell``-cycles of the associated digraph that are not rainbow in ``G``."""
    D = associated_digraph(G, policy)
    total = 0
    bad = 0
    example = None
    for cyc in enumerate_cycles(D, ell, budget=budget):
        total += 1
        if not is_rainbow(G, cyc.vertices):
            bad += 1
            if example is None:
                example = cyc.vertices
    return NonRainbowReport(G.n, ell, total, bad, G.n ** (ell - 1), example)
