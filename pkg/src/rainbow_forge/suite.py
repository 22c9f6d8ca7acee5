"""Random instance generators, the full verification battery, and threshold exploration.

Budgets apply per search call. Any search that runs out degrades its check
to ``inconclusive``; nothing in the battery treats that as a failure.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .constructions import (
    appendix_checks,
    build_appendix_g1,
    build_appendix_g2,
    build_blowup,
    build_cplus,
    build_hard,
    build_matching,
    construction_checks,
)
from .errors import BudgetExceeded
from .graph import (
    Digraph,
    EdgeColoredGraph,
    TriPartition,
    in_degrees,
    out_degrees,
)
from .report import Check, VerificationSuite, verdict
from .search import (
    DEFAULT_BUDGET,
    find_rainbow_cycle,
    has_closed_walk,
    reversal_profile,
)
from .structure import (
    amenability,
    find_extremal_partition,
    find_j_special_4cycles,
    is_lambda_extremal,
    positive_indegree_core,
    structure_report,
)
from .transforms import (
    associated_digraph,
    determined_colored_graph,
    directed_to_rainbow_map,
    non_rainbow_bound_check,
    verify_li_correspondence,
)

DEFAULT_LENGTHS = (4, 5, 7, 8)


# --------------------------------------------------------------------------
# random instances


def random_oriented_digraph(n: int, p: float, rng: np.random.Generator) -> Digraph:
    """Each pair becomes an arc with probability ``p``, oriented by a fair coin."""
    arcs = []
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return Digraph.from_arcs(n, arcs)


def random_colored_graph(n: int, p: float, ncolors: int, rng: np.random.Generator) -> EdgeColoredGraph:
    edges = [
        (u, v, int(rng.integers(ncolors)))
        for u, v in itertools.combinations(range(n), 2)
        if rng.random() < p
    ]
    return EdgeColoredGraph.from_edges(n, edges)


def random_balanced_tripartite(n: int, p: float, ncolors: int, rng: np.random.Generator):
    """Random colored subgraph of the balanced ``K[V_0, V_1, V_2]`` on index blocks."""
    m, r = divmod(n, 3)
    P = TriPartition.from_sizes((m + (r >= 1), m + (r >= 2), m))
    edges = [
        (u, v, int(rng.integers(ncolors)))
        for u, v in itertools.combinations(range(n), 2)
        if P[u] != P[v] and rng.random() < p
    ]
    return EdgeColoredGraph.from_edges(n, edges), P


def random_cycle(G: EdgeColoredGraph, ell: int, rng: np.random.Generator, tries: int = 2000):
    """A random ``ell``-cycle grown by a self-avoiding walk, or None after ``tries`` attempts."""
    adj = G.adjacency
    for _ in range(tries):
        path = [int(rng.integers(G.n))]
        seen = {path[0]}
        while len(path) < ell:
            options = [w for w in adj[path[-1]] if w not in seen]
            if not options:
                break
            w = options[int(rng.integers(len(options)))]
            path.append(w)
            seen.add(w)
        if len(path) == ell and G.has_edge(path[-1], path[0]):
            return tuple(path)
    return None


def random_amenability_instance(rng: np.random.Generator, max_n: int = 40):
    """Random ``(n, good, internal, external)`` size vectors from a random vertex labelling."""
    n = int(rng.integers(3, max_n + 1))
    good, internal, external = [0, 0, 0], [0, 0, 0], [0, 0, 0]
    weights = rng.dirichlet(np.ones(3))
    for _ in range(n):
        part = int(rng.integers(3))
        kind = int(rng.choice(3, p=weights))
        (good, internal, external)[kind][part] += 1
    return n, good, internal, external


# --------------------------------------------------------------------------
# the battery


def _guard(name: str, fn: Callable[[], Iterable[Check] | Check]) -> list[Check]:
    try:
        out = fn()
    except BudgetExceeded as exc:
        return [Check(name, "inconclusive", {"expansions": exc.expansions, "reason": str(exc)})]
    return [out] if isinstance(out, Check) else list(out)


def _construction_battery(max_n: int, lengths: Sequence[int], budget: int) -> list[Check]:
    checks = []
    for n in range(3, max_n + 1):
        checks += construction_checks(build_cplus(n), lengths, budget)
    feasible = [n for n in range(8, max_n + 1) if n % 3 == 2]
    for kind, builder in (("matching", build_matching), ("hard", build_hard)):
        if not feasible:
            checks.append(Check(f"{kind}.all", "skipped", {"reason": "no n ≡ 2 (mod 3) with 8 <= n <= max_n"}))
        for n in feasible:
            checks += construction_checks(builder(n), lengths, budget)
    directed_lengths = sorted(set(lengths) | {3, 6})
    for sizes in itertools.product(range(1, 4), repeat=3):
        if sum(sizes) <= max_n:
            checks += construction_checks(build_blowup(sizes), directed_lengths, budget)
    for k in range(1, max_n):
        if 3 * k + 2 > max_n:
            break
        for builder in (build_appendix_g1, build_appendix_g2):
            checks += construction_checks(builder((k, k, k)), directed_lengths, budget)
    for n in feasible:
        checks += appendix_checks(n)
    return checks


def _correspondence_battery(rng, instances: int, max_n: int, budget: int) -> list[Check]:
    checks = []
    for t in range(instances):
        n = int(rng.integers(3, max(4, min(max_n, 9)) + 1))
        D = random_oriented_digraph(n, float(rng.uniform(0.3, 0.9)), rng)
        name = f"transforms.random[{t}]"

        def run(D=D, name=name):
            G = determined_colored_graph(D)
            out = []
            for ell in range(3, min(n, 6) + 1):
                rep = verify_li_correspondence(D, ell, budget)
                exact = rep.directed_count == rep.rainbow_count == rep.properly_colored_count
                out.append(verdict(f"{name}.li_C{ell}", exact, witness={"arcs": D.arcs}, **rep.to_dict()))
            mapping = directed_to_rainbow_map(D, min(n, 5), budget)
            out.append(verdict(f"{name}.bijection", len(mapping) == len(set(mapping.values())), witness={"arcs": D.arcs}))
            # in-arcs of v all carry color v, adding one color class when present
            expected = out_degrees(D) + (in_degrees(D) > 0)
            same = bool(np.array_equal(out_degrees(associated_digraph(G)), expected))
            out.append(verdict(f"{name}.round_trip_out_degrees", same, witness={"arcs": D.arcs}))
            return out

        checks += _guard(name, run)
    return checks


def _non_rainbow_battery(rng, instances: int, budget: int) -> list[Check]:
    checks = []
    for t in range(instances):
        n = int(rng.integers(3, 9))
        G = random_colored_graph(n, float(rng.uniform(0.4, 1.0)), int(rng.integers(1, n + 1)), rng)
        ell = int(rng.integers(3, 6))
        name = f"fact_non_rainbow.random[{t}]"

        def run(G=G, ell=ell, name=name):
            rep = non_rainbow_bound_check(G, ell, budget=budget)
            return verdict(name, rep.holds, witness={"edges": G.edges, "example": rep.example}, **rep.to_dict())

        checks += _guard(name, run)
    return checks


def _reversal_battery(rng, samples: int) -> list[Check]:
    bad = []
    done = 0
    while done < samples:
        n = int(rng.integers(6, 13))
        G, P = random_balanced_tripartite(n, 0.7, 3, rng)
        ell = int(rng.integers(3, n + 1))
        cyc = random_cycle(G, ell, rng, tries=200)
        if cyc is None:
            continue
        done += 1
        prof = reversal_profile(cyc, P)
        if prof.backward != prof.forward or (ell % 3 and prof.backward < 1):
            bad.append({"cycle": cyc, "partition": P.part, "backward": prof.backward, "forward": prof.forward})
    return [verdict("reversal_parity", not bad, witness=bad[:1], samples=samples)]


def _structure_battery(rng, max_n: int, samples: int, budget: int) -> list[Check]:
    checks = []
    for n in range(9, max(9, max_n) + 1):
        con = build_cplus(n)
        rep = structure_report(con.graph, con.partition)
        primaries_ok = all(rep.primary.get(u) == u for u in range(n))
        no_special = all(d == 0 for d in rep.special_degree.values())
        ok = rep.all_good and primaries_ok and no_special and bool(rep.amenable) and not rep.undefined_primary
        checks.append(verdict(
            f"structure.cplus[{n}]", ok, witness=rep.to_dict(),
            all_good=rep.all_good, primaries_ok=primaries_ok, no_special=no_special, amenable=rep.amenable,
        ))
    bad = []
    for _ in range(samples):
        n, good, internal, external = random_amenability_instance(rng)
        _, amen = amenability(n, good, internal, external)
        if not amen:
            bad.append({"n": n, "good": good, "internal": internal, "external": external})
    checks.append(verdict("structure.amenability_arithmetic", not bad, witness=bad[:1], samples=samples))

    # special 4-cycles in graphs free of rainbow C4
    feasible = [n for n in range(8, max_n + 1) if n % 3 == 2]
    for n in feasible:
        con = build_matching(n)
        rep = structure_report(con.graph, con.partition)
        name = f"structure.j_special.matching[{n}]"

        def run(con=con, rep=rep, name=name):
            flagged = []
            total = 0
            for j in range(3):
                audits = find_j_special_4cycles(con.graph, rep.refined, j, rep.u_hat[j], budget)
                total += len(audits)
                flagged += [a.to_dict() for a in audits if a.verdict == "rainbow-candidate"]
            return verdict(name, not flagged, witness=flagged[:1], audited=total)

        checks += _guard(name, run)
    return checks


def _digraph_battery(rng, instances: int, max_n: int, budget: int) -> list[Check]:
    checks = []
    for sizes in itertools.product(range(1, 4), repeat=3):
        n = sum(sizes)
        if n > min(max_n, 9):
            continue
        con = build_blowup(sizes)
        name = f"extremal.blowup[{','.join(map(str, sizes))}]"

        def run(con=con, name=name):
            natural = is_lambda_extremal(con.graph, con.partition, "0.01")
            res = find_extremal_partition(con.graph, "0.01", budget=budget)
            # the scan is complete, so missing a partition is only fine when none exists
            ok = res.result.holds if res.found else not natural.holds
            return verdict(name, ok, witness=res.to_dict(), natural=natural.holds, found=res.found)

        checks += _guard(name, run)
    mismatch = []
    for t in range(instances):
        n = int(rng.integers(2, min(max_n, 10) + 1))
        D = random_oriented_digraph(n, float(rng.uniform(0.2, 0.8)), rng)
        ref = positive_indegree_core(D).vertices
        for _ in range(5):
            if positive_indegree_core(D, rng).vertices != ref:
                mismatch.append({"arcs": D.arcs})
                break
    checks.append(verdict("core.order_independent", not mismatch, witness=mismatch[:1], instances=instances))
    walk_bad = []
    for t in range(instances):
        n = int(rng.integers(2, 8))
        D = random_oriented_digraph(n, 0.5, rng)
        extra = [(u, v) for u in range(n) for v in range(n) if u != v and not D.has_arc(u, v)]
        if not extra:
            continue
        u, v = extra[int(rng.integers(len(extra)))]
        bigger = Digraph.from_arcs(n, D.arcs + ((u, v),))
        for ell in range(1, 8):
            if has_closed_walk(D, ell) and not has_closed_walk(bigger, ell):
                walk_bad.append({"arcs": D.arcs, "added": (u, v), "length": ell})
    checks.append(verdict("walks.monotone_under_arc_addition", not walk_bad, witness=walk_bad[:1]))
    return checks


def run_verification_suite(
    max_n: int = 11,
    lengths: Sequence[int] = DEFAULT_LENGTHS,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    random_instances: int = 40,
) -> VerificationSuite:
    """Run every finite claim the library can check, up to ``max_n`` vertices."""
    rng = np.random.default_rng(seed)
    lengths = tuple(sorted(set(int(x) for x in lengths)))
    suite = VerificationSuite(config={
        "max_n": max_n, "lengths": list(lengths), "budget": budget, "seed": seed,
        "random_instances": random_instances,
    })
    suite.extend(_construction_battery(max_n, lengths, budget))
    suite.extend(_correspondence_battery(rng, random_instances, max_n, budget))
    suite.extend(_non_rainbow_battery(rng, random_instances, budget))
    suite.extend(_reversal_battery(rng, 10 * random_instances))
    suite.extend(_structure_battery(rng, max_n, 10 * random_instances, budget))
    suite.extend(_digraph_battery(rng, random_instances, max_n, budget))
    return suite


# --------------------------------------------------------------------------
# threshold exploration


@dataclass
class ThresholdReport:
    n: int
    length: int
    trials: int
    seed: int
    palette_size: int
    threshold: str
    accepted: int = 0
    attempts: int = 0
    hits: int = 0
    inconclusive: int = 0
    model: str = "complete graph, uniform color per edge, rejection until the color-degree bound holds"
    samples: list = field(default_factory=list)

    @property
    def hit_rate(self) -> float | None:
        decided = self.accepted - self.inconclusive
        return self.hits / decided if decided else None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "length": self.length,
            "trials": self.trials,
            "seed": self.seed,
            "palette_size": self.palette_size,
            "threshold": self.threshold,
            "accepted": self.accepted,
            "attempts": self.attempts,
            "hits": self.hits,
            "inconclusive": self.inconclusive,
            "hit_rate": self.hit_rate,
            "model": self.model,
            "samples": self.samples,
        }


def _min_color_degrees(batch: np.ndarray, k: int) -> np.ndarray:
    """Minimum color degree of each complete-graph coloring in a ``(B, n, n)`` batch."""
    n = batch.shape[1]
    seen = np.zeros(batch.shape[:2] + (k,), dtype=bool)
    off = ~np.eye(n, dtype=bool)
    for c in range(k):
        seen[:, :, c] = ((batch == c) & off).any(axis=2)
    return seen.sum(axis=2).min(axis=1)


def explore_threshold(
    n: int,
    ell: int,
    trials: int,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    max_attempts: int = 10_000_000,
    batch: int = 4096,
) -> ThresholdReport:
    """Sample colorings of ``K_n`` meeting ``δ^c >= (n + 5) / 3`` and record how often a rainbow ``C_ell`` appears.

    Observational only; nothing here is asserted.
    """
    k = math.ceil((n + 5) / 3)
    rep = ThresholdReport(n, ell, trials, seed, k, f"{n + 5}/3")
    if trials <= 0:
        return rep
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, 1)
    while rep.accepted < trials and rep.attempts < max_attempts:
        size = min(batch, max_attempts - rep.attempts)
        upper = rng.integers(0, k, size=(size, len(iu[0])))
        full = np.full((size, n, n), -1, dtype=np.int64)
        full[:, iu[0], iu[1]] = upper
        full[:, iu[1], iu[0]] = upper
        ok = 3 * _min_color_degrees(full, k) >= n + 5
        for idx in range(size):
            rep.attempts += 1
            if not ok[idx]:
                continue
            G = EdgeColoredGraph.from_edges(
                n, [(int(u), int(v), int(c)) for u, v, c in zip(iu[0], iu[1], upper[idx])]
            )
            rep.accepted += 1
            try:
                w = find_rainbow_cycle(G, ell, budget)
            except BudgetExceeded:
                rep.inconclusive += 1
                w = None
            else:
                rep.hits += w is not None
            if len(rep.samples) < 3:
                rep.samples.append({"edges": [list(e) for e in G.edges], "witness": None if w is None else w.to_dict()})
            if rep.accepted >= trials:
                break
    return rep
