"""Slow, obviously-correct reference implementations used only by the tests.

Nothing here imports the search kernels; graphs are read through their
plain ``edges`` / ``arcs`` tuples.
"""

from __future__ import annotations

import itertools


def edge_colors(G) -> dict:
    out = {}
    for u, v, c in G.edges:
        out[(u, v)] = c
        out[(v, u)] = c
    return out


def color_degree(G, v) -> int:
    return len({c for u, w, c in G.edges if v in (u, w)})


def cycles(n, is_edge, ell, directed):
    """Every cycle as its canonical tuple, by scanning vertex permutations."""
    found = set()
    for subset in itertools.combinations(range(n), ell):
        first = subset[0]
        for rest in itertools.permutations(subset[1:]):
            seq = (first,) + rest
            if not directed and seq[1] > seq[-1]:
                continue
            if all(is_edge(seq[k], seq[(k + 1) % ell]) for k in range(ell)):
                found.add(seq)
    return found


def undirected_cycles(G, ell, kind="all"):
    col = edge_colors(G)
    out = set()
    for seq in cycles(G.n, lambda a, b: (a, b) in col, ell, directed=False):
        cs = [col[(seq[k], seq[(k + 1) % ell])] for k in range(ell)]
        if kind == "rainbow" and len(set(cs)) != ell:
            continue
        if kind == "proper" and any(cs[k] == cs[(k + 1) % ell] for k in range(ell)):
            continue
        out.add(seq)
    return out


def directed_cycles(D, ell):
    arcs = set(D.arcs)
    return cycles(D.n, lambda a, b: (a, b) in arcs, ell, directed=True)


def closed_walk_exists(D, ell) -> bool:
    """Breadth-first over (start, current) pairs, one step at a time."""
    succ = {v: [w for u, w in D.arcs if u == v] for v in range(D.n)}
    states = {(v, v) for v in range(D.n)}
    for _ in range(ell):
        states = {(s, w) for s, v in states for w in succ[v]}
    return any(s == v for s, v in states)


def cyclic_counts(D, labels):
    counts = [0, 0, 0]
    for u, v in D.arcs:
        if labels[v] == (labels[u] + 1) % 3:
            counts[labels[u]] += 1
    return counts


def first_extremal_labels(D, lam):
    """Lexicographically first label vector with all cyclic counts >= (1/9 - lam) n^2."""
    from fractions import Fraction

    need = (Fraction(1, 9) - Fraction(lam)) * D.n * D.n
    for labels in itertools.product(range(3), repeat=D.n):
        if labels[0] != 0:
            break
        if min(cyclic_counts(D, labels)) >= need:
            return labels
    return None


def peel_core(D) -> frozenset:
    """Fixed point of deleting vertices with no in-arc from a surviving vertex."""
    alive = set(range(D.n))
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if not any(u in alive for u, w in D.arcs if w == v):
                alive.discard(v)
                changed = True
    return frozenset(alive)
