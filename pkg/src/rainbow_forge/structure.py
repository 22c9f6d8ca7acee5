"""Extremal partitions and the good/bad decomposition of nearly canonical colorings.

All threshold comparisons are exact. Quantities such as ``λ^{1/4} n`` are
never materialized: a comparison ``q <= λ^{1/4}`` with rational ``q`` is
decided as ``q <= 0 or q**4 <= λ``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from . import kernels
from .errors import BudgetExceeded, GraphInputError, UndefinedPrimaryColor
from .graph import (
    Digraph,
    EdgeColoredGraph,
    TriPartition,
    arcs_between,
    color_degree_into,
    degree_into,
    in_degrees,
    min_color_degree,
    min_out,
)
from .search import DEFAULT_BUDGET, CycleWitness, enumerate_cycles
from .transforms import LOWEST, RepresentativePolicy, associated_digraph

# The proof's extremality constant. Far below anything observable at desk scale.
LAMBDA_0 = Fraction(1, 32000) ** 4
DEFAULT_LAMBDA = Fraction(1, 100)


def as_fraction(x) -> Fraction:
    """Exact rational from int, Fraction, decimal string or float (read by its repr)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(str(x))


def at_most_fourth_root(q: Fraction, lam: Fraction) -> bool:
    """Decide ``q <= lam ** (1/4)`` exactly."""
    return q <= 0 or q**4 <= lam


def _check_partition(n: int, P: TriPartition) -> None:
    if P.n != n:
        raise GraphInputError(f"partition covers {P.n} vertices, graph has {n}")


# --------------------------------------------------------------------------
# lambda-extremality


@dataclass(frozen=True)
class ExtremalityResult:
    partition: TriPartition
    cyclic_counts: tuple[int, int, int]
    n: int
    lam: Fraction
    policy_relative: bool = False

    @property
    def min_cyclic_density(self) -> Fraction:
        return Fraction(min(self.cyclic_counts), self.n**2)

    @property
    def threshold(self) -> Fraction:
        """Smallest ``λ >= 0`` at which this partition is λ-extremal."""
        return max(Fraction(0), Fraction(1, 9) - self.min_cyclic_density)

    @property
    def holds(self) -> bool:
        need = (Fraction(1, 9) - self.lam) * self.n**2
        return all(e >= need for e in self.cyclic_counts)

    def to_dict(self) -> dict:
        return {
            "partition": list(self.partition.part),
            "cyclic_counts": list(self.cyclic_counts),
            "n": self.n,
            "lambda": str(self.lam),
            "min_cyclic_density": str(self.min_cyclic_density),
            "threshold": str(self.threshold),
            "holds": self.holds,
            "policy_relative": self.policy_relative,
        }


def cyclic_counts(D: Digraph, P: TriPartition) -> tuple[int, int, int]:
    """``(e(V_0, V_1), e(V_1, V_2), e(V_2, V_0))``."""
    _check_partition(D.n, P)
    return tuple(arcs_between(D, P.members(i), P.members(i + 1)) for i in range(3))


def is_lambda_extremal(D: Digraph, P: TriPartition, lam) -> ExtremalityResult:
    """Evaluate the three cyclic densities of ``P`` against ``(1/9 - λ) n^2``.

    The returned result is truthy-tested through ``.holds``.
    """
    lam = as_fraction(lam)
    if lam < 0:
        raise GraphInputError("λ must be nonnegative")
    if D.n == 0:
        raise GraphInputError("extremality of the empty digraph is undefined")
    return ExtremalityResult(P, cyclic_counts(D, P), D.n, lam)


@dataclass(frozen=True)
class PartitionSearch:
    result: ExtremalityResult | None
    complete: bool
    mode: str
    evaluated: int
    policy_relative: bool = False

    @property
    def found(self) -> bool:
        return self.result is not None

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "complete": self.complete,
            "conclusive": self.found or self.complete,
            "mode": self.mode,
            "evaluated": self.evaluated,
            "policy_relative": self.policy_relative,
            "result": None if self.result is None else self.result.to_dict(),
        }


def _required_count(n: int, lam: Fraction) -> int:
    return math.ceil((Fraction(1, 9) - lam) * n * n)


def find_extremal_partition(
    graph: Union[Digraph, EdgeColoredGraph],
    lam,
    mode: str = "exhaustive",
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    policy: RepresentativePolicy = LOWEST,
) -> PartitionSearch:
    """Look for a λ-extremal partition.

    Exhaustive mode returns the lexicographically first witness and, when it
    finds none, the absence is a proof. Local search absence is inconclusive.
    An edge-colored graph is searched through its associated digraph under
    ``policy``, so its verdict is relative to that choice.
    """
    lam = as_fraction(lam)
    policy_relative = isinstance(graph, EdgeColoredGraph)
    D = associated_digraph(graph, policy) if policy_relative else graph
    if D.n == 0:
        raise GraphInputError("extremality of the empty digraph is undefined")
    if mode == "exhaustive":
        out = _exhaustive_scan(D, lam, budget)
    elif mode == "local-search":
        out = _local_search(D, lam, budget, seed)
    else:
        raise GraphInputError(f"unknown search mode {mode!r}")
    result = out.result
    if result is not None and policy_relative:
        result = ExtremalityResult(result.partition, result.cyclic_counts, result.n, lam, True)
    return PartitionSearch(result, out.complete, out.mode, out.evaluated, policy_relative)


def _arc_arrays(D: Digraph) -> tuple[np.ndarray, np.ndarray]:
    arcs = np.array(D.arcs, dtype=np.int64).reshape(-1, 2)
    return np.ascontiguousarray(arcs[:, 0]), np.ascontiguousarray(arcs[:, 1])


def _exhaustive_scan(D: Digraph, lam: Fraction, budget: int) -> PartitionSearch:
    total = 3 ** (D.n - 1)
    if total > budget:
        raise BudgetExceeded(
            f"exhaustive partition scan needs {total} evaluations, budget is {budget}",
            expansions=0,
        )
    need = _required_count(D.n, lam)
    arc_u, arc_v = _arc_arrays(D)
    found, evaluated, status, part = kernels.partition_scan(D.n, arc_u, arc_v, need, budget)
    if not found:
        return PartitionSearch(None, True, "exhaustive", int(evaluated))
    P = TriPartition(tuple(int(p) for p in part))
    return PartitionSearch(is_lambda_extremal(D, P, lam), True, "exhaustive", int(evaluated))


def naive_extremal_partition(D: Digraph, lam) -> ExtremalityResult | None:
    """Reference scan over all ``3^n`` label vectors in lexicographic order."""
    lam = as_fraction(lam)
    for labels in itertools.product(range(3), repeat=D.n):
        res = is_lambda_extremal(D, TriPartition(labels), lam)
        if res.holds:
            return res
    return None


def _local_search(D: Digraph, lam: Fraction, budget: int, seed: int) -> PartitionSearch:
    """Steepest ascent on ``(min_i e_i, sum_i e_i)`` over single-vertex moves, with restarts."""
    n = D.n
    need = _required_count(n, lam)
    rng = np.random.default_rng(seed)
    A = D.matrix.astype(np.int64)
    evaluated = 0

    def score(part: np.ndarray) -> tuple[int, int]:
        counts = [int(A[np.ix_(part == i, part == (i + 1) % 3)].sum()) for i in range(3)]
        return min(counts), sum(counts)

    while evaluated < budget:
        part = rng.integers(0, 3, size=n)
        current = score(part)
        evaluated += 1
        while True:
            if current[0] >= need:
                P = TriPartition(tuple(int(p) for p in part))
                return PartitionSearch(is_lambda_extremal(D, P, lam), False, "local-search", evaluated)
            best, best_move = current, None
            for v in range(n):
                old = part[v]
                for new in range(3):
                    if new == old:
                        continue
                    part[v] = new
                    s = score(part)
                    evaluated += 1
                    if s > best:
                        best, best_move = s, (v, new)
                part[v] = old
                if evaluated >= budget:
                    break
            if best_move is None or evaluated >= budget:
                break
            part[best_move[0]] = best_move[1]
            current = best
    return PartitionSearch(None, False, "local-search", evaluated)


def falling(x: int, k: int) -> int:
    return math.perm(x, k) if x >= k else 0


@dataclass(frozen=True)
class CycleCountReport:
    length: int
    k: int
    total_cycles: int
    balanced_cycles: int
    anchored_sequences: int
    falling_product: int
    complete_blowup: bool
    extremal: bool
    proof_lower_bound: Fraction

    @property
    def exact_count_holds(self) -> bool | None:
        """For a complete blow-up: anchored sequences equal the falling-factorial product."""
        if not self.complete_blowup:
            return None
        return (
            self.anchored_sequences == self.falling_product
            and self.balanced_cycles * self.k == self.falling_product
            and self.total_cycles == self.balanced_cycles
        )

    @property
    def lower_bound_holds(self) -> bool:
        return self.anchored_sequences >= self.proof_lower_bound

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "k": self.k,
            "total_cycles": self.total_cycles,
            "balanced_cycles": self.balanced_cycles,
            "anchored_sequences": self.anchored_sequences,
            "falling_product": self.falling_product,
            "complete_blowup": self.complete_blowup,
            "extremal": self.extremal,
            "exact_count_holds": self.exact_count_holds,
            "proof_lower_bound": str(self.proof_lower_bound),
            "lower_bound_holds": self.lower_bound_holds,
        }


def blowup_arcs(P: TriPartition) -> frozenset[tuple[int, int]]:
    return frozenset(
        (u, v) for u in range(P.n) for v in range(P.n) if P[v] == (P[u] + 1) % 3
    )


def extremal_cycle_count_check(
    D: Digraph, P: TriPartition, lam, ell: int, budget: int = DEFAULT_BUDGET
) -> CycleCountReport:
    """Count directed ``ell``-cycles meeting every part ``k = ell/3`` times.

    A cycle meeting ``V_0`` ``k`` times can be read from ``k`` starting points
    in ``V_0``; ``anchored_sequences`` counts those readings, which is the
    quantity ``(|V_0|)_k (|V_1|)_k (|V_2|)_k`` describes on a complete blow-up.
    """
    if ell % 3 != 0 or ell < 3:
        raise GraphInputError(f"length must be a positive multiple of 3, got {ell}")
    lam = as_fraction(lam)
    _check_partition(D.n, P)
    k = ell // 3
    total = balanced = 0
    for cyc in enumerate_cycles(D, ell, budget=budget):
        total += 1
        profile = Counter(P[v] for v in cyc.vertices)
        if all(profile[i] == k for i in range(3)):
            balanced += 1
    sizes = P.sizes
    product = falling(sizes[0], k) * falling(sizes[1], k) * falling(sizes[2], k)
    if min(sizes) == 0:
        lower = Fraction(0)
    else:
        ratio = (Fraction(1, 9) - lam) * Fraction(D.n**3, sizes[0] * sizes[1] * sizes[2])
        lower = (ratio - 2) * product
    return CycleCountReport(
        ell,
        k,
        total,
        balanced,
        balanced * k,
        product,
        frozenset(D.arcs) == blowup_arcs(P),
        is_lambda_extremal(D, P, lam).holds,
        lower,
    )


# --------------------------------------------------------------------------
# good and bad vertices


@dataclass(frozen=True)
class GoodBad:
    good: tuple[frozenset, frozenset, frozenset]
    bad: tuple[frozenset, frozenset, frozenset]

    @property
    def all_good(self) -> frozenset:
        return self.good[0] | self.good[1] | self.good[2]

    @property
    def all_bad(self) -> frozenset:
        return self.bad[0] | self.bad[1] | self.bad[2]


def is_good_vertex(G: EdgeColoredGraph, P: TriPartition, v: int, lam) -> bool:
    lam = as_fraction(lam)
    i = P[v]
    fwd = P.members(i + 1)
    back = P.members(i - 1)
    n = G.n
    fwd_gap = Fraction(len(fwd) - color_degree_into(G, v, fwd), n)
    back_gap = Fraction(len(back) - degree_into(G, v, back), n)
    return at_most_fourth_root(fwd_gap, lam) and at_most_fourth_root(back_gap, lam)


def classify_good_vertices(G: EdgeColoredGraph, P: TriPartition, lam) -> GoodBad:
    """Split each ``V_i`` by the two degree conditions with slack ``λ^{1/4} n``.

    A vertex of ``V_i`` is good when it sees all but ``λ^{1/4} n`` colors
    into ``V_{i+1}`` and has all but ``λ^{1/4} n`` neighbors in ``V_{i-1}``.
    """
    lam = as_fraction(lam)
    if lam <= 0:
        raise GraphInputError("λ must be positive")
    _check_partition(G.n, P)
    good = [set(), set(), set()]
    bad = [set(), set(), set()]
    for v in range(G.n):
        (good if is_good_vertex(G, P, v, lam) else bad)[P[v]].add(v)
    return GoodBad(tuple(map(frozenset, good)), tuple(map(frozenset, bad)))


def refine_partition(
    G: EdgeColoredGraph, P: TriPartition, lam, classification: GoodBad | None = None
) -> tuple[TriPartition, dict[int, int]]:
    """Keep good vertices in place and move every bad ``v`` to ``U_{j_v - 1}``.

    ``j_v`` maximizes the color degree of ``v`` into ``V_j^good``; ties go to
    the smallest ``j``. Returns the refined partition and ``{v: j_v}``.
    """
    cls = classification or classify_good_vertices(G, P, lam)
    labels = list(P.part)
    moves = {}
    for v in sorted(cls.all_bad):
        degs = [color_degree_into(G, v, cls.good[j]) for j in range(3)]
        j = degs.index(max(degs))
        moves[v] = j
        labels[v] = (j - 1) % 3
    return TriPartition(tuple(labels)), moves


@dataclass(frozen=True)
class PrimaryColor:
    vertex: int
    color: int
    typical: frozenset
    special: frozenset


def primary_color(
    G: EdgeColoredGraph, U: TriPartition, u: int, good: Iterable[int] | None = None
) -> PrimaryColor:
    """Most frequent color on edges from ``u`` into the previous part (ties: smallest id).

    Neighbors across the primary color are typical, the others special.
    """
    if good is not None and u not in set(good):
        raise GraphInputError(f"vertex {u} is not good")
    i = U[u]
    row = G.color_matrix[u]
    back = [w for w in sorted(U.members(i - 1)) if row[w] >= 0]
    if not back:
        raise UndefinedPrimaryColor(f"vertex {u} has no edges into part {(i - 1) % 3}")
    freq = Counter(int(row[w]) for w in back)
    top = max(freq.values())
    color = min(c for c, f in freq.items() if f == top)
    typical = frozenset(w for w in back if row[w] == color)
    return PrimaryColor(u, color, typical, frozenset(back) - typical)


# --------------------------------------------------------------------------
# full report


@dataclass(frozen=True)
class BoundCheck:
    name: str
    part: int | None
    lhs: int
    rhs: float
    status: str  # holds | fails | vacuous

    def to_dict(self) -> dict:
        return {"name": self.name, "part": self.part, "lhs": self.lhs, "rhs": self.rhs, "status": self.status}


def _lower_bound(name, part, lhs, base: Fraction, coef: int, n: int, lam: Fraction) -> BoundCheck:
    """``lhs >= base - coef * λ^{1/4} n``."""
    t = float(lam) ** 0.25
    rhs = float(base) - coef * t * n
    if at_most_fourth_root(Fraction(base) / (coef * n), lam):
        return BoundCheck(name, part, lhs, rhs, "vacuous")
    ok = at_most_fourth_root((Fraction(base) - lhs) / (coef * n), lam)
    return BoundCheck(name, part, lhs, rhs, "holds" if ok else "fails")


def _deviation_bound(name, part, lhs, centre: Fraction, coef: int, n: int, lam, limit: Fraction):
    """``|lhs - centre| <= coef * λ^{1/4} n``; vacuous once the slack exceeds ``limit``."""
    t = float(lam) ** 0.25
    rhs = coef * t * n
    if at_most_fourth_root(limit / (coef * n), lam):
        return BoundCheck(name, part, lhs, rhs, "vacuous")
    ok = at_most_fourth_root(abs(lhs - centre) / (coef * n), lam)
    return BoundCheck(name, part, lhs, rhs, "holds" if ok else "fails")


def amenability(n: int, good: Sequence[int], internal: Sequence[int], external: Sequence[int]):
    """Size arithmetic behind the amenable index.

    With ``m = n // 3``, ``Δ_j = m - (good_j + external_j)`` and ``j`` is
    amenable when ``Δ_j >= 0``, ``internal_{j+1} <= 2 Δ_j`` and
    ``|U_{j+2}| <= m + 2 Δ_j + 2``. Returns ``(deltas, amenable)``.
    """
    if sum(good) + sum(internal) + sum(external) != n:
        raise GraphInputError("part sizes must add up to n")
    m = n // 3
    sizes = [good[j] + internal[j] + external[j] for j in range(3)]
    deltas = tuple(m - good[j] - external[j] for j in range(3))
    amenable = tuple(
        j
        for j in range(3)
        if deltas[j] >= 0
        and internal[(j + 1) % 3] <= 2 * deltas[j]
        and sizes[(j + 2) % 3] <= m + 2 * deltas[j] + 2
    )
    return deltas, amenable


@dataclass(frozen=True)
class StructureReport:
    n: int
    m: int
    lam: Fraction
    partition: TriPartition
    refined: TriPartition
    good: tuple[frozenset, frozenset, frozenset]
    initial_bad: tuple[frozenset, frozenset, frozenset]
    moves: dict
    primary: dict
    typical_degree: dict
    special_degree: dict
    undefined_primary: frozenset
    internal_bad: tuple[frozenset, frozenset, frozenset]
    external_bad: tuple[frozenset, frozenset, frozenset]
    deltas: tuple[int, int, int]
    amenable: tuple[int, ...]
    bounds: tuple[BoundCheck, ...] = field(default=())

    @property
    def refined_bad(self) -> tuple[frozenset, frozenset, frozenset]:
        return tuple(self.internal_bad[j] | self.external_bad[j] for j in range(3))

    @property
    def u_hat(self) -> tuple[frozenset, frozenset, frozenset]:
        return tuple(self.good[j] | self.external_bad[j] for j in range(3))

    @property
    def all_good(self) -> bool:
        return not any(self.initial_bad)

    def to_dict(self) -> dict:
        def sets(t):
            return [sorted(s) for s in t]

        return {
            "n": self.n,
            "m": self.m,
            "lambda": str(self.lam),
            "partition": list(self.partition.part),
            "refined": list(self.refined.part),
            "good": sets(self.good),
            "bad": sets(self.initial_bad),
            "refined_bad": sets(self.refined_bad),
            "moves": {str(v): j for v, j in sorted(self.moves.items())},
            "primary": {str(u): c for u, c in sorted(self.primary.items())},
            "typical_degree": {str(u): d for u, d in sorted(self.typical_degree.items())},
            "special_degree": {str(u): d for u, d in sorted(self.special_degree.items())},
            "undefined_primary": sorted(self.undefined_primary),
            "internal_bad": sets(self.internal_bad),
            "external_bad": sets(self.external_bad),
            "u_hat_sizes": [len(s) for s in self.u_hat],
            "deltas": list(self.deltas),
            "amenable": list(self.amenable),
            "bounds": [b.to_dict() for b in self.bounds],
        }


def structure_report(G: EdgeColoredGraph, P: TriPartition, lam=DEFAULT_LAMBDA) -> StructureReport:
    lam = as_fraction(lam)
    n = G.n
    m = n // 3
    cls = classify_good_vertices(G, P, lam)
    U, moves = refine_partition(G, P, lam, cls)
    good = cls.good

    primary, typ, spec = {}, {}, {}
    undefined = set()
    for u in sorted(cls.all_good):
        try:
            pc = primary_color(G, U, u)
        except UndefinedPrimaryColor:
            undefined.add(u)
            continue
        primary[u] = pc.color
        typ[u] = len(pc.typical)
        spec[u] = len(pc.special)

    internal = [set(), set(), set()]
    external = [set(), set(), set()]
    for v in sorted(cls.all_bad):
        j = U[v]
        (internal if color_degree_into(G, v, U.members(j)) >= 3 else external)[j].add(v)
    internal = tuple(map(frozenset, internal))
    external = tuple(map(frozenset, external))
    deltas, amen = amenability(
        n, [len(g) for g in good], [len(s) for s in internal], [len(s) for s in external]
    )
    bounds = _bounds(G, P, U, cls, lam) if n else ()
    return StructureReport(
        n, m, lam, P, U, good, cls.bad, moves, primary, typ, spec, frozenset(undefined),
        internal, external, deltas, amen, bounds,
    )


def _bounds(G, P, U, cls: GoodBad, lam) -> tuple[BoundCheck, ...]:
    n = G.n
    third = Fraction(n, 3)
    out = []
    for i in range(3):
        out.append(_lower_bound("good_in_V", i, len(cls.good[i]), Fraction(len(P.members(i))), 24, n, lam))
    for i in range(3):
        out.append(_deviation_bound("size_U", i, len(U.members(i)), third, 75, n, lam, Fraction(2 * n, 3)))
        out.append(_deviation_bound("size_U_good", i, len(cls.good[i]), third, 75, n, lam, Fraction(2 * n, 3)))
    nbad = len(cls.all_bad)
    t_float = float(lam) ** 0.25
    if at_most_fourth_root(Fraction(1, 72), lam):
        out.append(BoundCheck("bad_total", None, nbad, 72 * t_float * n, "vacuous"))
    else:
        ok = at_most_fourth_root(Fraction(nbad, 72 * n), lam)
        out.append(BoundCheck("bad_total", None, nbad, 72 * t_float * n, "holds" if ok else "fails"))

    delta_c = min_color_degree(G) if n else 0
    for i in range(3):
        goods = sorted(cls.good[i])
        fwd_U, back_U = U.members(i + 1), U.members(i - 1)
        fwd_good, back_good = cls.good[(i + 1) % 3], cls.good[(i - 1) % 3]
        if goods:
            fwd = min(color_degree_into(G, u, fwd_U) for u in goods)
            fwd_g = min(color_degree_into(G, u, fwd_good) for u in goods)
            back = min(degree_into(G, u, back_U) for u in goods)
            back_g = min(degree_into(G, u, back_good) for u in goods)
            out.append(_lower_bound("good_fwd_color_vs_V", i, fwd, Fraction(len(P.members(i + 1))), 73, n, lam))
            out.append(_lower_bound("good_fwd_color_vs_U", i, fwd, Fraction(len(fwd_U)), 145, n, lam))
            out.append(_lower_bound("good_fwd_color_into_good", i, fwd_g, third, 76, n, lam))
            out.append(_lower_bound("good_back_deg_vs_V", i, back, Fraction(len(P.members(i - 1))), 73, n, lam))
            out.append(_lower_bound("good_back_deg_vs_U", i, back, Fraction(len(back_U)), 145, n, lam))
            out.append(_lower_bound("good_back_deg_into_good", i, back_g, third, 76, n, lam))
        bads = sorted(U.members(i) - cls.good[i])
        if bads:
            bad_fwd = min(color_degree_into(G, u, fwd_U) for u in bads)
            out.append(_lower_bound("bad_fwd_color_vs_min_degree", i, bad_fwd, Fraction(delta_c, 3), 72, n, lam))
            out.append(_lower_bound("bad_fwd_color", i, bad_fwd, Fraction(n, 9), 72, n, lam))
    return tuple(out)


# --------------------------------------------------------------------------
# special 4-cycles and strong cycles


@dataclass(frozen=True)
class SpecialCycleAudit:
    cycle: CycleWitness
    n_colors: int
    special_match: bool
    verdict: str  # conforming | rainbow-candidate | other

    def to_dict(self) -> dict:
        return {**self.cycle.to_dict(), "n_colors": self.n_colors, "special_match": self.special_match, "verdict": self.verdict}


def _primaries(G, U, vertices):
    out = {}
    for u in vertices:
        try:
            out[u] = primary_color(G, U, u)
        except UndefinedPrimaryColor:
            pass
    return out


def find_j_special_4cycles(
    G: EdgeColoredGraph,
    U: TriPartition,
    j: int,
    good: Iterable[int] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[SpecialCycleAudit]:
    """All 4-cycles ``(u_j, u_{j-1}, v_j, v_{j-1})`` with typical edges ``u_j u_{j-1}``, ``v_j v_{j-1}``
    and special edges ``u_j v_{j-1}``, ``v_j u_{j-1}``, each audited for its color count.

    ``good`` restricts ``u_j, v_j`` to good vertices (default: all of ``U_j``).
    """
    j %= 3
    members = U.members(j)
    cand = sorted(members if good is None else members & set(good))
    prim = _primaries(G, U, cand)
    cand = [u for u in cand if u in prim]
    found = []
    steps = 0
    for a_idx, u in enumerate(cand):
        pu = prim[u]
        for v in cand[a_idx + 1:]:
            pv = prim[v]
            for x in sorted(pu.typical & pv.special):
                for y in sorted(pv.typical & pu.special):
                    steps += 1
                    if steps > budget:
                        raise BudgetExceeded(f"j-special search exceeded {budget} steps", steps, len(found))
                    if x == y:
                        continue
                    vs = (u, x, v, y)
                    cols = tuple(G.color(vs[k], vs[(k + 1) % 4]) for k in range(4))
                    distinct = len(set(cols))
                    match = cols[1] == cols[3]
                    if distinct == 3 and match:
                        verdict = "conforming"
                    elif distinct == 4:
                        verdict = "rainbow-candidate"
                    else:
                        verdict = "other"
                    found.append(SpecialCycleAudit(CycleWitness(vs, cols), distinct, match, verdict))
    return found


def strong_cycle_check(
    G: EdgeColoredGraph,
    U: TriPartition,
    cycle: CycleWitness | Sequence[int],
    anchor: int,
    good: Iterable[int] | None = None,
) -> bool:
    """Is the cycle, read from ``anchor`` in its given direction, strong?

    With ``(u_1, ..., u_k)`` the rotation starting at ``anchor``: ``u_1`` must
    be good and ``u_k`` a typical neighbor of ``u_1`` in the previous part.
    """
    vs = tuple(cycle.vertices if isinstance(cycle, CycleWitness) else cycle)
    if anchor not in vs:
        raise GraphInputError(f"anchor {anchor} is not on the cycle")
    if good is not None and anchor not in set(good):
        return False
    idx = vs.index(anchor)
    last = vs[idx - 1]
    try:
        pc = primary_color(G, U, anchor)
    except UndefinedPrimaryColor:
        return False
    return last in pc.typical


# --------------------------------------------------------------------------
# degree cores


def v_high(D: Digraph, beta) -> frozenset[int]:
    """Vertices with in-degree at least ``δ^+ - n β^2 / 2``."""
    beta = as_fraction(beta)
    if beta < 0:
        raise GraphInputError("β must be nonnegative")
    if D.n == 0:
        return frozenset()
    threshold = min_out(D) - D.n * beta * beta / 2
    indeg = in_degrees(D)
    return frozenset(v for v in range(D.n) if indeg[v] >= threshold)


@dataclass(frozen=True)
class CoreResult:
    vertices: frozenset
    core: Digraph
    labels: tuple[int, ...]
    removal_order: tuple[int, ...]
    out_degrees_preserved: bool

    def to_dict(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "removal_order": list(self.removal_order),
            "out_degrees_preserved": self.out_degrees_preserved,
            "arcs": [[self.labels[u], self.labels[v]] for u, v in self.core.arcs],
        }


def positive_indegree_core(D: Digraph, rng: np.random.Generator | None = None) -> CoreResult:
    """Peel in-degree-0 vertices until none remain.

    With ``rng`` the next vertex to peel is drawn at random among the
    candidates; otherwise the smallest is taken.
    """
    indeg = in_degrees(D).copy()
    alive = np.ones(D.n, dtype=bool)
    order = []
    ready = sorted(v for v in range(D.n) if indeg[v] == 0)
    while ready:
        pick = int(rng.integers(len(ready))) if rng is not None else 0
        v = ready.pop(pick)
        alive[v] = False
        order.append(v)
        for w in D.out_neighbors[v]:
            if alive[w]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        if rng is None:
            ready.sort()
    keep = [v for v in range(D.n) if alive[v]]
    core, labels = D.induced(keep)
    full_out = D.matrix.sum(axis=1)
    core_out = core.matrix.sum(axis=1)
    preserved = all(core_out[i] == full_out[v] for i, v in enumerate(labels))
    return CoreResult(frozenset(keep), core, labels, tuple(order), preserved)
