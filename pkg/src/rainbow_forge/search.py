"""Cycle and closed-walk search on colored graphs and digraphs."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

import numpy as np

from . import kernels
from .errors import BudgetExceeded, GraphInputError
from .graph import Digraph, EdgeColoredGraph, TriPartition

DEFAULT_BUDGET = int(os.environ.get("RAINBOW_FORGE_BUDGET", 2_000_000_000))

KINDS = ("all", "rainbow", "proper")
_MODES = {"all": kernels.MODE_ALL, "rainbow": kernels.MODE_RAINBOW, "proper": kernels.MODE_PROPER}

Graph = Union[EdgeColoredGraph, Digraph]


@dataclass(frozen=True)
class CycleWitness:
    """A cycle given by its vertex sequence (wraparound implied).

    ``colors[k]`` is the color of the edge ``vertices[k] -- vertices[k+1]``;
    it is ``None`` for cycles of a digraph.
    """

    vertices: tuple[int, ...]
    colors: tuple[int, ...] | None = None
    directed: bool = False

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def canonical(self) -> bool:
        return self.vertices == canonical_form(self.vertices, self.directed)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "colors": None if self.colors is None else list(self.colors),
        }


def canonical_form(vertices: Sequence[int], directed: bool) -> tuple[int, ...]:
    """Lexicographically smallest rotation (and, if undirected, reflection)."""
    vs = list(vertices)
    ell = len(vs)
    candidates = [vs[k:] + vs[:k] for k in range(ell)]
    if not directed:
        rev = vs[::-1]
        candidates += [rev[k:] + rev[:k] for k in range(ell)]
    return tuple(min(candidates))


def _witness(G: Graph, vertices) -> CycleWitness:
    vs = tuple(int(v) for v in vertices)
    if isinstance(G, Digraph):
        return CycleWitness(vs, None, True)
    mat = G.color_matrix
    cols = tuple(int(mat[vs[k], vs[(k + 1) % len(vs)]]) for k in range(len(vs)))
    return CycleWitness(vs, cols, False)


def _csr(neighbors) -> tuple[np.ndarray, np.ndarray]:
    indptr = np.zeros(len(neighbors) + 1, dtype=np.int64)
    for v, nb in enumerate(neighbors):
        indptr[v + 1] = indptr[v] + len(nb)
    indices = np.fromiter((w for nb in neighbors for w in nb), dtype=np.int64, count=int(indptr[-1]))
    return indptr, indices


def _dense_colors(G: EdgeColoredGraph) -> tuple[np.ndarray, int]:
    mat = G.color_matrix
    present = mat >= 0
    ids, inverse = np.unique(mat[present], return_inverse=True)
    dense = np.full(mat.shape, -1, dtype=np.int64)
    dense[present] = inverse
    return dense, int(ids.size)


def _run(G: Graph, ell: int, kind: str, budget: int, limit: int, capacity: int):
    if isinstance(G, Digraph):
        indptr, indices = _csr(G.out_neighbors)
        out = np.zeros((capacity, ell), dtype=np.int64)
        count, expansions, status = kernels.directed_cycles(
            indptr, indices, np.ascontiguousarray(G.matrix), ell, budget, limit, out
        )
    else:
        indptr, indices = _csr(G.adjacency)
        dense, ncolors = _dense_colors(G)
        out = np.zeros((capacity, ell), dtype=np.int64)
        count, expansions, status = kernels.undirected_cycles(
            indptr, indices, dense, ell, _MODES[kind], ncolors, budget, limit, out
        )
    if status == kernels.OVER_BUDGET:
        raise BudgetExceeded(
            f"cycle search (length {ell}, kind {kind}) exceeded {budget} node expansions "
            f"after finding {count} cycles",
            expansions=int(expansions),
            partial=int(count),
        )
    return int(count), int(expansions), out


def _check_length(G: Graph, ell: int) -> None:
    low = 2 if isinstance(G, Digraph) else 3
    if ell < low:
        raise GraphInputError(f"cycle length must be at least {low}, got {ell}")


def _check_kind(G: Graph, kind: str) -> None:
    if kind not in KINDS:
        raise GraphInputError(f"unknown cycle kind {kind!r}")
    if isinstance(G, Digraph) and kind != "all":
        raise GraphInputError("color constraints need an edge-colored graph")


def count_cycles(G: Graph, ell: int, kind: str = "all", budget: int = DEFAULT_BUDGET) -> int:
    """Number of ``ell``-cycles of the requested kind, each counted once."""
    _check_length(G, ell)
    _check_kind(G, kind)
    return _run(G, ell, kind, budget, 0, 0)[0]


def find_cycle(
    G: Graph, ell: int, kind: str = "all", budget: int = DEFAULT_BUDGET
) -> CycleWitness | None:
    _check_length(G, ell)
    _check_kind(G, kind)
    count, _, out = _run(G, ell, kind, budget, 1, 1)
    return _witness(G, out[0]) if count else None


def enumerate_cycles(
    G: Graph, ell: int, kind: str = "all", budget: int = DEFAULT_BUDGET
) -> Iterator[CycleWitness]:
    """Yield every canonical ``ell``-cycle in lexicographic order.

    Undirected cycles are canonical up to rotation and reflection, directed
    ones up to rotation.
    """
    _check_length(G, ell)
    _check_kind(G, kind)
    capacity = 4096
    count, _, out = _run(G, ell, kind, budget, 0, capacity)
    if count > capacity:
        count, _, out = _run(G, ell, kind, budget, 0, count)
    rows = sorted(tuple(int(x) for x in row) for row in out[:count])
    for row in rows:
        yield _witness(G, row)


def find_rainbow_cycle(G: EdgeColoredGraph, ell: int, budget: int = DEFAULT_BUDGET):
    return find_cycle(G, ell, "rainbow", budget)


def count_rainbow_cycles(G: EdgeColoredGraph, ell: int, budget: int = DEFAULT_BUDGET) -> int:
    return count_cycles(G, ell, "rainbow", budget)


def find_properly_colored_cycle(G: EdgeColoredGraph, ell: int, budget: int = DEFAULT_BUDGET):
    return find_cycle(G, ell, "proper", budget)


def count_properly_colored_cycles(G: EdgeColoredGraph, ell: int, budget: int = DEFAULT_BUDGET) -> int:
    return count_cycles(G, ell, "proper", budget)


def find_directed_cycle(D: Digraph, ell: int, budget: int = DEFAULT_BUDGET):
    return find_cycle(D, ell, "all", budget)


def count_directed_cycles(D: Digraph, ell: int, budget: int = DEFAULT_BUDGET) -> int:
    return count_cycles(D, ell, "all", budget)


def is_rainbow(G: EdgeColoredGraph, vertices: Sequence[int]) -> bool:
    """True iff ``vertices`` spans a cycle of ``G`` with all edge colors distinct."""
    cols = _cycle_colors(G, vertices)
    return cols is not None and len(set(cols)) == len(cols)


def is_properly_colored(G: EdgeColoredGraph, vertices: Sequence[int]) -> bool:
    cols = _cycle_colors(G, vertices)
    if cols is None:
        return False
    return all(cols[k] != cols[(k + 1) % len(cols)] for k in range(len(cols)))


def _cycle_colors(G: EdgeColoredGraph, vertices: Sequence[int]):
    vs = list(vertices)
    if len(vs) < 3 or len(set(vs)) != len(vs):
        return None
    cols = []
    for k in range(len(vs)):
        c = int(G.color_matrix[vs[k], vs[(k + 1) % len(vs)]])
        if c < 0:
            return None
        cols.append(c)
    return cols


# --------------------------------------------------------------------------
# closed walks


def _power_chain(A: np.ndarray, ell: int) -> list[np.ndarray]:
    """``[A^0, A^1, ..., A^ell]`` as boolean matrices."""
    powers = [np.eye(A.shape[0], dtype=bool)]
    for _ in range(ell):
        powers.append(kernels.bool_matmul(powers[-1], A))
    return powers


def walk_matrix(D: Digraph, ell: int) -> np.ndarray:
    """Boolean ``A^ell`` by repeated squaring: entry ``[u, v]`` says a length-``ell`` walk u -> v exists."""
    if ell < 0:
        raise GraphInputError("walk length must be nonnegative")
    A = np.ascontiguousarray(D.matrix)
    result = np.eye(D.n, dtype=bool)
    base = A.copy()
    k = ell
    while k:
        if k & 1:
            result = kernels.bool_matmul(result, base)
        k >>= 1
        if k:
            base = kernels.bool_matmul(base, base)
    return result


def has_closed_walk(D: Digraph, ell: int) -> bool:
    """True iff some vertex lies on a closed directed walk of length ``ell``."""
    if ell < 1:
        raise GraphInputError("closed-walk length must be at least 1")
    if D.n == 0:
        return False
    return bool(np.any(np.diag(walk_matrix(D, ell))))


def find_closed_walk(D: Digraph, ell: int, start: int | None = None) -> tuple[int, ...] | None:
    """A closed walk ``(w_0, ..., w_{ell-1})`` (arc ``w_{ell-1} -> w_0`` implied).

    The walk is read back from the chain of intermediate powers. With
    ``start`` given, the walk must begin there.
    """
    if ell < 1:
        raise GraphInputError("closed-walk length must be at least 1")
    if D.n == 0:
        return None
    A = np.ascontiguousarray(D.matrix)
    powers = _power_chain(A, ell)
    diag = np.diag(powers[ell])
    if start is None:
        hits = np.flatnonzero(diag)
        if hits.size == 0:
            return None
        start = int(hits[0])
    elif not diag[start]:
        return None
    walk = [start]
    u = start
    for remaining in range(ell, 1, -1):
        nxt = np.flatnonzero(A[u] & powers[remaining - 1][:, start])
        u = int(nxt[0])
        walk.append(u)
    return tuple(walk)


def is_closed_walk(D: Digraph, walk: Sequence[int]) -> bool:
    return len(walk) >= 1 and all(
        D.has_arc(walk[k], walk[(k + 1) % len(walk)]) for k in range(len(walk))
    )


# --------------------------------------------------------------------------
# reversals in 3-partite cycles


@dataclass(frozen=True)
class ReversalProfile:
    """Edge types and reversal positions of a cycle in ``K[V_0, V_1, V_2]``.

    ``positions`` lists ``(k, kind)`` for each reversal ``(e_k, e_{k+1})``.
    """

    types: tuple[int, ...]
    backward: int
    forward: int
    positions: tuple[tuple[int, str], ...]


def edge_type(P: TriPartition, u: int, v: int) -> int:
    """The ``i`` with ``{u, v}`` joining ``V_i`` and ``V_{i+1}``."""
    pu, pv = P[u], P[v]
    if pv == (pu + 1) % 3:
        return pu
    if pu == (pv + 1) % 3:
        return pv
    raise GraphInputError(f"edge {{{u}, {v}}} lies inside part {pu}; its type is undefined")


def reversal_profile(cycle: CycleWitness | Sequence[int], P: TriPartition) -> ReversalProfile:
    vs = tuple(cycle.vertices if isinstance(cycle, CycleWitness) else cycle)
    ell = len(vs)
    if ell < 3:
        raise GraphInputError("a cycle needs at least three vertices")
    types = tuple(edge_type(P, vs[k], vs[(k + 1) % ell]) for k in range(ell))
    positions = []
    backward = forward = 0
    for k in range(ell):
        i = types[k]
        if types[(k + 1) % ell] != i:
            continue
        shared = vs[(k + 1) % ell]
        if P[shared] == (i + 1) % 3:
            backward += 1
            positions.append((k, "backward"))
        else:
            forward += 1
            positions.append((k, "forward"))
    if backward != forward:  # pragma: no cover - would mean a broken cycle walk
        raise AssertionError(f"reversal imbalance on {vs}: {backward} backward, {forward} forward")
    return ReversalProfile(types, backward, forward, tuple(positions))
