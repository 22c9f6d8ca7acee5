"""Generators for the extremal examples and their claim checklists.

Layout conventions: parts are index blocks, ``V_0`` first. Vertex-named
colors use the vertex id; the extra symbol ⋆ gets id ``n``, the largest in the
palette. In the Case 3 graph ``x`` is the last vertex of ``V_0`` and ``y``
the last of ``V_1``; the appendix digraphs use the same layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .errors import BudgetExceeded, GraphInputError
from .graph import (
    Digraph,
    EdgeColoredGraph,
    TriPartition,
    color_degree,
    color_degree_into,
    is_oriented,
    min_color_degree,
    out_degree,
)
from .report import Check, passed, verdict
from .search import DEFAULT_BUDGET, find_cycle
from .structure import extremal_cycle_count_check
from .transforms import determined_colored_graph

STAR = "⋆"
KINDS = ("cplus", "matching", "hard", "blowup", "appendix-g1", "appendix-g2", "canonical")


@dataclass(frozen=True)
class ConstructionSpec:
    kind: str
    n: int | None = None
    sizes: tuple[int, int, int] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GraphInputError(f"unknown construction kind {self.kind!r}")
        if self.sizes is not None:
            object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if self.kind in ("cplus", "matching", "hard") and self.n is None:
            raise GraphInputError(f"{self.kind} needs n")
        if self.kind in ("blowup", "appendix-g1", "appendix-g2", "canonical") and self.sizes is None:
            raise GraphInputError(f"{self.kind} needs part sizes")

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.n is not None:
            d["n"] = self.n
        if self.sizes is not None:
            d["sizes"] = list(self.sizes)
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "ConstructionSpec":
        sizes = d.get("sizes")
        return cls(d["kind"], d.get("n"), tuple(sizes) if sizes is not None else None)


@dataclass(frozen=True)
class Construction:
    spec: ConstructionSpec
    graph: Union[EdgeColoredGraph, Digraph]
    partition: TriPartition
    meta: dict = field(default_factory=dict)


def _balanced_sizes(n: int) -> tuple[int, int, int]:
    m, r = divmod(n, 3)
    return (m + (r >= 1), m + (r >= 2), m)


def _blocks(sizes: Sequence[int]) -> list[list[int]]:
    out, start = [], 0
    for s in sizes:
        out.append(list(range(start, start + s)))
        start += s
    return out


def _vertex_palette(colors: Iterable[int], extra: Mapping[int, str] | None = None):
    pal = {c: f"v{c}" for c in colors}
    pal.update(extra or {})
    return tuple(sorted(pal.items()))


def _cplus_edges(parts) -> dict[tuple[int, int], int]:
    """``{v_i, v_{i+1}} -> v_{i+1}`` on the complete 3-partite graph."""
    colors = {}
    for i in range(3):
        for a in parts[i]:
            for b in parts[(i + 1) % 3]:
                colors[(min(a, b), max(a, b))] = b
    return colors


def _colored(n: int, colors: dict, extra_palette=None) -> EdgeColoredGraph:
    edges = tuple((u, v, c) for (u, v), c in sorted(colors.items()))
    used = {c for c in colors.values()} - set(extra_palette or {})
    return EdgeColoredGraph(n, edges, _vertex_palette(used, extra_palette))


def build_cplus(n: int) -> Construction:
    """Complete balanced 3-partite graph with ``{v_i, v_{i+1}}`` colored by ``v_{i+1}``."""
    if n < 3:
        raise GraphInputError(f"cplus needs n >= 3, got {n}")
    sizes = _balanced_sizes(n)
    parts = _blocks(sizes)
    G = _colored(n, _cplus_edges(parts))
    return Construction(ConstructionSpec("cplus", n), G, TriPartition.from_sizes(sizes), {"m": n // 3})


def _check_two_mod_three(kind: str, n: int) -> None:
    if n % 3 != 2 or n < 8:
        raise GraphInputError(f"{kind} needs n ≡ 2 (mod 3) and n >= 8, got {n}")


def build_matching(n: int) -> Construction:
    """Case-2 coloring: ⋆ on the matching ``x_a y_a``, ``x_b`` on other ``{x_a, y_b}``."""
    _check_two_mod_three("matching", n)
    m = n // 3
    sizes = (m + 1, m + 1, m)
    parts = _blocks(sizes)
    xs, ys = parts[0], parts[1]
    star = n
    colors = _cplus_edges(parts)
    for a, xa in enumerate(xs):
        for b, yb in enumerate(ys):
            colors[(xa, yb)] = star if a == b else xs[b]
    G = _colored(n, colors, {star: STAR})
    meta = {"m": m, "star": star, "matching": [(xs[a], ys[a]) for a in range(m + 1)]}
    return Construction(ConstructionSpec("matching", n), G, TriPartition.from_sizes(sizes), meta)


def _hard_layout(m: int):
    parts = _blocks((m + 1, m + 1, m))
    x, y = parts[0][-1], parts[1][-1]
    U = (parts[0][:-1], parts[1][:-1], parts[2])
    return parts, x, y, U


def build_hard(n: int) -> Construction:
    """Case-3 graph: the 3-partite graph altered around ``x`` and ``y``, with ⋆ on the altered edges."""
    _check_two_mod_three("hard", n)
    m = n // 3
    parts, x, y, U = _hard_layout(m)
    star = n
    base = _cplus_edges(parts)
    where = {v: i for i in range(3) for v in U[i]}
    colors = {}
    for a in range(n):
        for b in range(a + 1, n):
            if a in where and b in where and where[a] == where[b]:
                continue
            if (a == y and b in U[0]) or (b == y and a in U[0]):
                continue
            key = (a, b)
            if key not in base:
                colors[key] = star
            elif x in key and (key[0] in U[2] or key[1] in U[2]):
                colors[key] = star
            else:
                colors[key] = base[key]
    G = _colored(n, colors, {star: STAR})
    meta = {"m": m, "star": star, "x": x, "y": y, "U": [list(u) for u in U]}
    return Construction(ConstructionSpec("hard", n), G, TriPartition.from_sizes((m + 1, m + 1, m)), meta)


def build_blowup(sizes: Sequence[int]) -> Construction:
    """Arcs ``V_0 × V_1``, ``V_1 × V_2``, ``V_2 × V_0``."""
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) != 3 or min(sizes) < 1:
        raise GraphInputError(f"blow-up needs three positive part sizes, got {sizes}")
    parts = _blocks(sizes)
    arcs = [(u, v) for i in range(3) for u in parts[i] for v in parts[(i + 1) % 3]]
    return Construction(
        ConstructionSpec("blowup", sizes=sizes), Digraph(sum(sizes), tuple(arcs)), TriPartition.from_sizes(sizes)
    )


def _appendix_layout(sizes: Sequence[int]):
    a, b, c = (int(s) for s in sizes)
    if min(a, b, c) < 1:
        raise GraphInputError(f"appendix digraphs need positive part sizes, got {sizes}")
    U0 = list(range(a))
    x = a
    U1 = list(range(a + 1, a + 1 + b))
    y = a + 1 + b
    U2 = list(range(y + 1, y + 1 + c))
    return (U0, U1, U2), x, y, a + b + c + 2


def _appendix(kind: str, sizes, families) -> Construction:
    U, x, y, n = _appendix_layout(sizes)
    arcs = {(u, v) for tails, heads in families(U, x, y) for u in tails for v in heads}
    P = TriPartition.from_parts(n, (U[0] + [x], U[1] + [y], U[2]))
    meta = {"x": x, "y": y, "U": [list(u) for u in U]}
    return Construction(ConstructionSpec(kind, sizes=tuple(sizes)), Digraph(n, tuple(sorted(arcs))), P, meta)


def build_appendix_g1(sizes: Sequence[int]) -> Construction:
    def families(U, x, y):
        return [
            (U[0], U[1]), (U[1], U[2]), (U[2], U[0]),
            (U[0] + U[2], [x]), ([x], [y] + U[1]), ([y], U[2]),
        ]

    return _appendix("appendix-g1", sizes, families)


def build_appendix_g2(sizes: Sequence[int]) -> Construction:
    def families(U, x, y):
        return [
            (U[0], U[1]), (U[1], U[2]), (U[2], U[0]),
            ([x], U[1]), (U[1], [y]), ([y], [x] + U[2]),
        ]

    return _appendix("appendix-g2", sizes, families)


def build_canonical(P: TriPartition, common_colors: Mapping[int, int] | None = None) -> Construction:
    """Complete 3-partite coloring: distinct colors forward, one common color backward per vertex.

    ``common_colors[v]`` is the color on every edge from ``v`` into the
    previous part, default ``v`` itself (which reproduces ``build_cplus``).
    It must be injective on each part so forward colors stay distinct.
    """
    if min(P.sizes) < 1:
        raise GraphInputError("canonical coloring needs non-empty parts")
    common = {v: v for v in range(P.n)}
    if common_colors is not None:
        common.update({int(k): int(c) for k, c in common_colors.items()})
    for i in range(3):
        vals = [common[v] for v in P.members(i)]
        if len(set(vals)) != len(vals):
            raise GraphInputError(f"common colors repeat inside part {i}")
    colors = {}
    for i in range(3):
        for a in P.members(i):
            for b in P.members(i + 1):
                colors[(min(a, b), max(a, b))] = common[b]
    spec = ConstructionSpec("canonical", sizes=P.sizes)
    return Construction(spec, _colored(P.n, colors), P, {"common_colors": dict(sorted(common.items()))})


def build(spec: ConstructionSpec | Mapping) -> Construction:
    if not isinstance(spec, ConstructionSpec):
        spec = ConstructionSpec.from_dict(spec)
    if spec.kind == "cplus":
        return build_cplus(spec.n)
    if spec.kind == "matching":
        return build_matching(spec.n)
    if spec.kind == "hard":
        return build_hard(spec.n)
    if spec.kind == "blowup":
        return build_blowup(spec.sizes)
    if spec.kind == "appendix-g1":
        return build_appendix_g1(spec.sizes)
    if spec.kind == "appendix-g2":
        return build_appendix_g2(spec.sizes)
    return build_canonical(TriPartition.from_sizes(spec.sizes))


# --------------------------------------------------------------------------
# checklists


def _absence(name: str, graph, ell: int, kind: str, budget: int) -> Check:
    """Pass iff no cycle of the kind exists; budget exhaustion is inconclusive."""
    try:
        w = find_cycle(graph, ell, kind, budget)
    except BudgetExceeded as exc:
        return Check(name, "inconclusive", {"length": ell, "expansions": exc.expansions})
    if w is None:
        return passed(name, length=ell)
    return Check(name, "fail", {"length": ell}, w.to_dict())


def _regularity(name: str, G: EdgeColoredGraph, target: int) -> Check:
    off = [(v, color_degree(G, v)) for v in range(G.n) if color_degree(G, v) != target]
    return verdict(name, not off, witness=off[:1], target=target)


def construction_checks(con: Construction, lengths: Iterable[int], budget: int = DEFAULT_BUDGET) -> list[Check]:
    """Every checkable claim about ``con``; budget exhaustion degrades a claim to inconclusive."""
    kind = con.spec.kind
    G, P = con.graph, con.partition
    lengths = sorted(set(int(x) for x in lengths))
    tag = f"{kind}[{con.spec.n if con.spec.n is not None else ','.join(map(str, con.spec.sizes))}]"
    checks = []

    if kind in ("cplus", "canonical"):
        bad = []
        for v in range(G.n):
            i = P[v]
            fwd = P.members(i + 1)
            if color_degree_into(G, v, fwd) != len(fwd) or color_degree_into(G, v, P.members(i - 1)) != 1:
                bad.append(v)
        checks.append(verdict(f"{tag}.canonical_pattern", not bad, witness=bad[:1]))
    if kind == "cplus":
        m = G.n // 3
        formula = [v for v in range(G.n) if color_degree(G, v) != 1 + len(P.members(P[v] + 1))]
        checks.append(verdict(f"{tag}.color_degree_formula", not formula, witness=formula[:1]))
        dc = min_color_degree(G)
        checks.append(verdict(f"{tag}.min_color_degree", dc == m + 1, witness={"min": dc}, expected=m + 1, found=dc))
        off = [v for v in P.members(1) if color_degree(G, v) != dc]
        checks.append(verdict(f"{tag}.min_attained_on_V1", not off, witness=off[:1]))
        for ell in lengths:
            if ell >= 3 and ell % 3:
                checks.append(_absence(f"{tag}.no_rainbow_C{ell}", G, ell, "rainbow", budget))
    elif kind == "matching":
        m = con.meta["m"]
        checks.append(_regularity(f"{tag}.color_regular", G, m + 2))
        nstar = sum(1 for *_, c in G.edges if c == con.meta["star"])
        checks.append(verdict(f"{tag}.star_count", nstar == m + 1, witness={"star_edges": nstar}, expected=m + 1))
        for ell in lengths:
            if ell >= 3 and ell % 3 == 1:
                checks.append(_absence(f"{tag}.no_rainbow_C{ell}", G, ell, "rainbow", budget))
    elif kind == "hard":
        m = con.meta["m"]
        checks.append(_regularity(f"{tag}.color_regular", G, m + 2))
        base = build_cplus_like(con)
        diff = len(G.edge_set() ^ base)
        checks.append(verdict(f"{tag}.differs_in_3m_pairs", diff == 3 * m, witness={"pairs": diff}, expected=3 * m))
        for ell in lengths:
            if ell >= 3 and ell % 3 == 2:
                checks.append(_absence(f"{tag}.no_rainbow_C{ell}", G, ell, "rainbow", budget))
    elif kind == "blowup":
        checks.append(verdict(f"{tag}.oriented", is_oriented(G), witness="opposite arcs"))
        off = [v for v in range(G.n) if out_degree(G, v) != len(P.members(P[v] + 1))]
        checks.append(verdict(f"{tag}.out_degree_formula", not off, witness=off[:1]))
        for ell in lengths:
            if ell < 2:
                continue
            if ell % 3:
                checks.append(_absence(f"{tag}.no_directed_C{ell}", G, ell, "all", budget))
            else:
                checks.append(_blowup_count(f"{tag}.directed_C{ell}_count", con, ell, budget))
    elif kind in ("appendix-g1", "appendix-g2"):
        checks.append(verdict(f"{tag}.oriented", is_oriented(G), witness="opposite arcs"))
        for ell in lengths:
            if ell >= 2 and ell % 3 == 2:
                checks.append(_absence(f"{tag}.no_directed_C{ell}", G, ell, "all", budget))
    return checks


def build_cplus_like(con: Construction) -> frozenset:
    """Edge set of ``K[V_0, V_1, V_2]`` on ``con``'s partition."""
    P = con.partition
    return frozenset(
        (u, v) for u in range(P.n) for v in range(u + 1, P.n) if P[u] != P[v]
    )


def _blowup_count(name: str, con: Construction, ell: int, budget: int) -> Check:
    try:
        rep = extremal_cycle_count_check(con.graph, con.partition, 0, ell, budget)
    except BudgetExceeded as exc:
        return Check(name, "inconclusive", {"length": ell, "expansions": exc.expansions})
    detail = rep.to_dict()
    return verdict(name, bool(rep.exact_count_holds), witness=detail, **detail)


def verify_construction(
    spec: ConstructionSpec | Mapping, lengths: Iterable[int], budget: int = DEFAULT_BUDGET
) -> list[Check]:
    """Claim checklist for one construction. Raises ``BudgetExceeded`` on any exhausted search."""
    con = build(spec)
    checks = []
    for c in construction_checks(con, lengths, budget):
        if c.status == "inconclusive":
            raise BudgetExceeded(f"{c.name}: budget of {budget} expansions exhausted", c.detail.get("expansions", 0))
        checks.append(c)
    return checks


# --------------------------------------------------------------------------
# appendix edge-union argument


def color_bijection(G: EdgeColoredGraph, H: EdgeColoredGraph) -> dict[int, int] | None:
    """Color map making ``G`` and ``H`` equal under the identity on vertices, if one exists."""
    if G.n != H.n or G.edge_set() != H.edge_set():
        return None
    fwd, back = {}, {}
    for (u, v, c), (_, _, d) in zip(G.edges, H.edges):
        if fwd.setdefault(c, d) != d or back.setdefault(d, c) != c:
            return None
    return fwd


@dataclass(frozen=True)
class UnionReport:
    n: int
    union_identity: bool
    symmetric_difference_star: bool
    iso_g1: dict | None
    iso_g2: dict | None
    sym_diff: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return (
            self.union_identity
            and self.symmetric_difference_star
            and self.iso_g1 is not None
            and self.iso_g2 is not None
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "union_identity": self.union_identity,
            "symmetric_difference_star": self.symmetric_difference_star,
            "iso_g1": None if self.iso_g1 is None else {str(k): v for k, v in sorted(self.iso_g1.items())},
            "iso_g2": None if self.iso_g2 is None else {str(k): v for k, v in sorted(self.iso_g2.items())},
            "symmetric_difference": [list(e) for e in self.sym_diff],
            "ok": self.ok,
        }


def appendix_subgraphs(n: int):
    """The hard graph and its two edge-deleted pieces ``(hat, hat1, hat2, construction)``."""
    con = build_hard(n)
    G = con.graph
    x, y = con.meta["x"], con.meta["y"]
    U0, U1, U2 = con.meta["U"]
    hat1 = G.subgraph_without((y, u) for u in U1)
    hat2 = G.subgraph_without((x, u) for u in U0 + U2)
    return G, hat1, hat2, con


def appendix_union_check(n: int) -> UnionReport:
    G, hat1, hat2, con = appendix_subgraphs(n)
    m = con.meta["m"]
    e1, e2 = hat1.edge_set(), hat2.edge_set()
    sym = tuple(sorted(e1 ^ e2))
    star = con.meta["star"]
    sizes = (m, m, m)
    det1 = determined_colored_graph(build_appendix_g1(sizes).graph)
    det2 = determined_colored_graph(build_appendix_g2(sizes).graph)
    return UnionReport(
        n,
        (e1 | e2) == G.edge_set(),
        all(G.color(u, v) == star for u, v in sym),
        color_bijection(hat1, det1),
        color_bijection(hat2, det2),
        sym,
    )


def appendix_checks(n: int) -> list[Check]:
    rep = appendix_union_check(n)
    detail = rep.to_dict()
    return [
        verdict(f"appendix[{n}].union_identity", rep.union_identity, witness=detail),
        verdict(f"appendix[{n}].symmetric_difference_star", rep.symmetric_difference_star, witness=detail),
        verdict(f"appendix[{n}].g1_isomorphic", rep.iso_g1 is not None, witness=detail, color_map=detail["iso_g1"]),
        verdict(f"appendix[{n}].g2_isomorphic", rep.iso_g2 is not None, witness=detail, color_map=detail["iso_g2"]),
    ]
