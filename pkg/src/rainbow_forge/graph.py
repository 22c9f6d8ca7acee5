"""Core graph types and degree primitives.

Vertices are dense integers ``0..n-1``; colors are nonnegative integers whose
human-readable names live in an optional palette.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import GraphInputError


def _check_vertex(n: int, v: int) -> int:
    if not isinstance(v, (int, np.integer)) or v < 0 or v >= n:
        raise GraphInputError(f"vertex {v!r} out of range for n={n}")
    return int(v)


def _vertex_mask(n: int, vertices: Iterable[int]) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    for v in vertices:
        mask[_check_vertex(n, v)] = True
    return mask


def _freeze_palette(palette) -> tuple[tuple[int, str], ...]:
    if palette is None:
        return ()
    items = palette.items() if isinstance(palette, Mapping) else palette
    return tuple(sorted((int(k), str(name)) for k, name in items))


@dataclass(frozen=True)
class EdgeColoredGraph:
    """A simple undirected graph with one color per edge.

    ``edges`` holds ``(u, v, color)`` triples with ``u < v``, sorted.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...]
    palette: tuple[tuple[int, str], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphInputError("vertex count must be nonnegative")
        seen = set()
        normalized = []
        for e in self.edges:
            if len(e) != 3:
                raise GraphInputError(f"edge {e!r} must be (u, v, color)")
            u, v, c = (int(x) for x in e)
            _check_vertex(self.n, u)
            _check_vertex(self.n, v)
            if u == v:
                raise GraphInputError(f"loop at vertex {u}")
            if c < 0:
                raise GraphInputError(f"negative color {c} on edge {{{u}, {v}}}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphInputError(f"parallel edge {key}")
            seen.add(key)
            normalized.append((key[0], key[1], c))
        object.__setattr__(self, "edges", tuple(sorted(normalized)))
        object.__setattr__(self, "palette", _freeze_palette(self.palette))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], palette=None) -> "EdgeColoredGraph":
        return cls(n, tuple(tuple(e) for e in edges), _freeze_palette(palette))

    @cached_property
    def color_matrix(self) -> np.ndarray:
        """``n x n`` array of edge colors, ``-1`` where there is no edge."""
        mat = np.full((self.n, self.n), -1, dtype=np.int64)
        for u, v, c in self.edges:
            mat[u, v] = c
            mat[v, u] = c
        mat.setflags(write=False)
        return mat

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @property
    def palette_names(self) -> dict[int, str]:
        return dict(self.palette)

    @property
    def colors(self) -> frozenset[int]:
        return frozenset(c for _, _, c in self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return self.color_matrix[u, v] >= 0

    def color(self, u: int, v: int) -> int:
        c = int(self.color_matrix[u, v])
        if c < 0:
            raise GraphInputError(f"no edge {{{u}, {v}}}")
        return c

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, v, _ in self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[_check_vertex(self.n, v)])

    def subgraph_without(self, pairs: Iterable[tuple[int, int]]) -> "EdgeColoredGraph":
        """Edge-deleted subgraph on the same vertex set."""
        drop = {(min(u, v), max(u, v)) for u, v in pairs}
        return EdgeColoredGraph(
            self.n, tuple(e for e in self.edges if (e[0], e[1]) not in drop), self.palette
        )


@dataclass(frozen=True)
class Digraph:
    """A loopless directed graph whose arcs form a set."""

    n: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphInputError("vertex count must be nonnegative")
        seen = set()
        for a in self.arcs:
            if len(a) != 2:
                raise GraphInputError(f"arc {a!r} must be (u, v)")
            u, v = int(a[0]), int(a[1])
            _check_vertex(self.n, u)
            _check_vertex(self.n, v)
            if u == v:
                raise GraphInputError(f"loop at vertex {u}")
            if (u, v) in seen:
                raise GraphInputError(f"repeated arc {(u, v)}")
            seen.add((u, v))
        object.__setattr__(self, "arcs", tuple(sorted(seen)))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Sequence[int]]) -> "Digraph":
        return cls(n, tuple(tuple(a) for a in arcs))

    @cached_property
    def matrix(self) -> np.ndarray:
        mat = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.arcs:
            mat[u, v] = True
        mat.setflags(write=False)
        return mat

    @cached_property
    def out_neighbors(self) -> tuple[tuple[int, ...], ...]:
        nbrs = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            nbrs[u].append(v)
        return tuple(tuple(a) for a in nbrs)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.matrix[u, v])

    def induced(self, vertices: Iterable[int]) -> tuple["Digraph", tuple[int, ...]]:
        """Induced subdigraph, relabelled densely; also returns the old labels."""
        keep = tuple(sorted(set(_check_vertex(self.n, v) for v in vertices)))
        index = {v: i for i, v in enumerate(keep)}
        arcs = tuple((index[u], index[v]) for u, v in self.arcs if u in index and v in index)
        return Digraph(len(keep), arcs), keep


@dataclass(frozen=True)
class TriPartition:
    """Assignment of every vertex to one of the parts 0, 1, 2."""

    part: tuple[int, ...]

    def __post_init__(self):
        part = tuple(int(p) for p in self.part)
        if any(p not in (0, 1, 2) for p in part):
            raise GraphInputError("partition labels must lie in {0, 1, 2}")
        object.__setattr__(self, "part", part)

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "TriPartition":
        """Index blocks: the first ``sizes[0]`` vertices form part 0, and so on."""
        if len(sizes) != 3 or any(s < 0 for s in sizes):
            raise GraphInputError(f"need three nonnegative part sizes, got {sizes!r}")
        return cls(tuple(i for i, s in enumerate(sizes) for _ in range(s)))

    @classmethod
    def from_parts(cls, n: int, parts: Sequence[Iterable[int]]) -> "TriPartition":
        label = [-1] * n
        for i, members in enumerate(parts):
            for v in members:
                _check_vertex(n, v)
                if label[v] != -1:
                    raise GraphInputError(f"vertex {v} assigned twice")
                label[v] = i
        if -1 in label:
            raise GraphInputError(f"vertex {label.index(-1)} unassigned")
        return cls(tuple(label))

    @property
    def n(self) -> int:
        return len(self.part)

    def members(self, i: int) -> frozenset[int]:
        i %= 3
        return frozenset(v for v, p in enumerate(self.part) if p == i)

    @property
    def sizes(self) -> tuple[int, int, int]:
        return tuple(self.part.count(i) for i in range(3))

    def __getitem__(self, v: int) -> int:
        return self.part[v]

    def rotated(self, shift: int = 1) -> "TriPartition":
        return TriPartition(tuple((p + shift) % 3 for p in self.part))


# --------------------------------------------------------------------------
# colored-graph degrees


def color_degree(G: EdgeColoredGraph, v: int) -> int:
    """Number of distinct colors on the edges at ``v``."""
    row = G.color_matrix[_check_vertex(G.n, v)]
    return int(np.unique(row[row >= 0]).size)


def min_color_degree(G: EdgeColoredGraph) -> int:
    if G.n == 0:
        raise GraphInputError("minimum color degree of an empty graph is undefined")
    return min(color_degree(G, v) for v in range(G.n))


def color_degree_into(G: EdgeColoredGraph, v: int, S: Iterable[int]) -> int:
    """Number of distinct colors on edges from ``v`` into ``S``."""
    row = G.color_matrix[_check_vertex(G.n, v)]
    sel = row[_vertex_mask(G.n, S)]
    return int(np.unique(sel[sel >= 0]).size)


def degree_into(G: EdgeColoredGraph, v: int, S: Iterable[int]) -> int:
    row = G.color_matrix[_check_vertex(G.n, v)]
    return int(np.count_nonzero(row[_vertex_mask(G.n, S)] >= 0))


# --------------------------------------------------------------------------
# digraph degrees


def out_degree(D: Digraph, v: int) -> int:
    return int(D.matrix[_check_vertex(D.n, v)].sum())


def in_degree(D: Digraph, v: int) -> int:
    return int(D.matrix[:, _check_vertex(D.n, v)].sum())


def _nonempty(D: Digraph) -> None:
    if D.n == 0:
        raise GraphInputError("degree aggregate of an empty digraph is undefined")


def out_degrees(D: Digraph) -> np.ndarray:
    return D.matrix.sum(axis=1).astype(np.int64)


def in_degrees(D: Digraph) -> np.ndarray:
    return D.matrix.sum(axis=0).astype(np.int64)


def min_out(D: Digraph) -> int:
    _nonempty(D)
    return int(out_degrees(D).min())


def min_in(D: Digraph) -> int:
    _nonempty(D)
    return int(in_degrees(D).min())


def min_semidegree(D: Digraph) -> int:
    return min(min_out(D), min_in(D))


def max_in(D: Digraph) -> int:
    _nonempty(D)
    return int(in_degrees(D).max())


def is_oriented(D: Digraph) -> bool:
    """True iff no pair of opposite arcs is present."""
    return not bool(np.any(D.matrix & D.matrix.T))


def arcs_between(D: Digraph, A: Iterable[int], B: Iterable[int]) -> int:
    """``|arcs ∩ (A × B)|``; ``A`` and ``B`` may overlap."""
    a = _vertex_mask(D.n, A)
    b = _vertex_mask(D.n, B)
    return int(D.matrix[np.ix_(a, b)].sum())


def relabel_digraph(D: Digraph, perm: Sequence[int]) -> Digraph:
    """Apply the vertex bijection ``v -> perm[v]``."""
    if sorted(perm) != list(range(D.n)):
        raise GraphInputError("relabelling must be a permutation of the vertices")
    return Digraph(D.n, tuple((perm[u], perm[v]) for u, v in D.arcs))


def relabel_colored(G: EdgeColoredGraph, perm: Sequence[int]) -> EdgeColoredGraph:
    if sorted(perm) != list(range(G.n)):
        raise GraphInputError("relabelling must be a permutation of the vertices")
    return EdgeColoredGraph(G.n, tuple((perm[u], perm[v], c) for u, v, c in G.edges), G.palette)
