"""``rainbow-forge`` command line.

Exit codes: 0 success, 1 a checked claim failed (witness in the report),
2 bad input, 3 a search ran out of budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .constructions import KINDS, ConstructionSpec, build, verify_construction
from .errors import BudgetExceeded, ContractViolation, GraphInputError
from .graph import Digraph, EdgeColoredGraph
from .report import VerificationSuite, jsonable
from .search import (
    DEFAULT_BUDGET,
    count_cycles,
    find_closed_walk,
    find_cycle,
)
from .structure import (
    DEFAULT_LAMBDA,
    find_extremal_partition,
    is_lambda_extremal,
    positive_indegree_core,
    structure_report,
    v_high,
)
from .suite import DEFAULT_LENGTHS, explore_threshold, run_verification_suite
from .transforms import RepresentativePolicy, associated_digraph, determined_colored_graph

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(payload, args, text_lines=None) -> None:
    if getattr(args, "format", "json") == "text" and text_lines is not None:
        out = "\n".join(text_lines) + "\n"
    else:
        out = json.dumps(jsonable(payload), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    target = getattr(args, "report", None)
    if target:
        Path(target).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


def _suite_lines(suite: VerificationSuite) -> list[str]:
    lines = [f"{c.status.upper():13s} {c.name}" for c in suite.checks]
    counts = suite.counts()
    lines.append(" ".join(f"{k}={v}" for k, v in counts.items()))
    return lines


def _suite_exit(suite: VerificationSuite) -> int:
    return EXIT_OK if suite.ok else EXIT_FAIL


# --------------------------------------------------------------------------
# subcommands


def cmd_generate(args) -> int:
    spec = ConstructionSpec(args.kind, args.n, tuple(args.sizes) if args.sizes else None)
    con = build(spec)
    text = io.dumps(con.graph, args.graph_format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.partition_out:
        io.save_partition(con.partition, args.partition_out)
    return EXIT_OK


def cmd_transform(args) -> int:
    G = io.load(args.graph)
    if args.to == "associated":
        if not isinstance(G, EdgeColoredGraph):
            raise GraphInputError("the associated digraph needs an edge-colored graph")
        out = associated_digraph(G, RepresentativePolicy(args.policy, args.seed))
    else:
        if not isinstance(G, Digraph):
            raise GraphInputError("the determined colored graph needs a digraph")
        out = determined_colored_graph(G)
    text = io.dumps(out, args.graph_format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_search(args) -> int:
    G = io.load(args.graph)
    ell = args.length
    if args.kind == "walk":
        if not isinstance(G, Digraph):
            raise GraphInputError("closed-walk search needs a digraph")
        walk = find_closed_walk(G, ell)
        _emit({"kind": "walk", "length": ell, "found": walk is not None,
               "walk": None if walk is None else list(walk)}, args)
        return EXIT_OK
    if args.kind == "directed":
        if not isinstance(G, Digraph):
            raise GraphInputError("directed search needs a digraph")
        kind = "all"
    else:
        if not isinstance(G, EdgeColoredGraph):
            raise GraphInputError(f"{args.kind} search needs an edge-colored graph")
        kind = args.kind
    if args.count:
        n = count_cycles(G, ell, kind, args.budget)
        _emit({"kind": args.kind, "length": ell, "count": n}, args)
    else:
        w = find_cycle(G, ell, kind, args.budget)
        _emit({"kind": args.kind, "length": ell, "found": w is not None,
               "witness": None if w is None else w.to_dict()}, args)
    return EXIT_OK


def cmd_analyze(args) -> int:
    G = io.load(args.graph)
    payload = {"lambda": args.lam}
    if args.partition:
        P = io.load_partition(args.partition)
        if isinstance(G, Digraph):
            res = is_lambda_extremal(G, P, args.lam)
            payload["extremality"] = res.to_dict()
    else:
        res = find_extremal_partition(G, args.lam, args.mode, args.budget, args.seed)
        payload["search"] = res.to_dict()
        if not res.found:
            _emit(payload, args)
            return EXIT_OK
        P = res.result.partition
    if isinstance(G, EdgeColoredGraph):
        payload["structure"] = structure_report(G, P, args.lam).to_dict()
    _emit(payload, args)
    return EXIT_OK


def cmd_verify_construction(args) -> int:
    if args.spec:
        try:
            spec = ConstructionSpec.from_dict(json.loads(Path(args.spec).read_text(encoding="utf-8")))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise GraphInputError(f"bad construction spec: {exc}") from None
    elif args.kind:
        spec = ConstructionSpec(args.kind, args.n, tuple(args.sizes) if args.sizes else None)
    else:
        raise GraphInputError("give --spec FILE or --kind")
    suite = VerificationSuite(verify_construction(spec, args.lengths, args.budget),
                              {"spec": spec.to_dict(), "lengths": args.lengths, "budget": args.budget})
    _emit(suite.to_dict(), args, _suite_lines(suite))
    return _suite_exit(suite)


def cmd_suite(args) -> int:
    suite = run_verification_suite(args.max_n, args.lengths, args.budget, args.seed, args.instances)
    _emit(suite.to_dict(), args, _suite_lines(suite))
    return _suite_exit(suite)


def cmd_explore(args) -> int:
    rep = explore_threshold(args.n, args.length, args.trials, args.seed, args.budget)
    d = rep.to_dict()
    _emit(d, args, [f"{k}: {v}" for k, v in d.items() if k != "samples"])
    return EXIT_OK


def _digraph(path) -> Digraph:
    D = io.load(path)
    if not isinstance(D, Digraph):
        raise GraphInputError("this subcommand needs a digraph")
    return D


def cmd_core(args) -> int:
    D = _digraph(args.graph)
    rng = np.random.default_rng(args.seed) if args.seed is not None else None
    rep = positive_indegree_core(D, rng)
    _emit(rep.to_dict(), args)
    return EXIT_OK if rep.out_degrees_preserved else EXIT_FAIL


def cmd_vhigh(args) -> int:
    D = _digraph(args.graph)
    _emit({"beta": args.beta, "vertices": sorted(v_high(D, args.beta))}, args)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rainbow-forge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def reporting(sp, text=True):
        sp.add_argument("--report", help="write the report here instead of stdout")
        if text:
            sp.add_argument("--format", choices=("json", "text"), default="json")

    def budget(sp):
        sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                        help="node-expansion cap per search (env RAINBOW_FORGE_BUDGET)")

    def shape(sp):
        sp.add_argument("--kind", choices=KINDS)
        sp.add_argument("--n", type=int)
        sp.add_argument("--sizes", type=_int_list, help="part sizes a,b,c")

    sp = sub.add_parser("generate", help="write a construction")
    shape(sp)
    sp.add_argument("--out")
    sp.add_argument("--partition-out")
    sp.add_argument("--graph-format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("transform", help="associated digraph or determined colored graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--to", choices=("associated", "determined"), required=True)
    sp.add_argument("--policy", choices=("lowest", "random"), default="lowest")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out")
    sp.add_argument("--graph-format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("search", help="find or count cycles and closed walks")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--kind", choices=("rainbow", "proper", "directed", "walk"), required=True)
    sp.add_argument("--length", type=int, required=True)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--first", action="store_true", help="default")
    budget(sp)
    reporting(sp, text=False)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("analyze", help="extremality and structure report")
    sp.add_argument("--graph", required=True)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--partition")
    src.add_argument("--search", action="store_true")
    sp.add_argument("--mode", choices=("exhaustive", "local-search"), default="exhaustive")
    sp.add_argument("--lambda", dest="lam", default=str(DEFAULT_LAMBDA))
    sp.add_argument("--seed", type=int, default=0)
    budget(sp)
    reporting(sp, text=False)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("verify-construction", help="check a construction's claims")
    sp.add_argument("--spec")
    shape(sp)
    sp.add_argument("--lengths", type=_int_list, default=list(DEFAULT_LENGTHS))
    budget(sp)
    reporting(sp)
    sp.set_defaults(func=cmd_verify_construction)

    sp = sub.add_parser("suite", help="run the whole verification battery")
    sp.add_argument("--max-n", type=int, default=11)
    sp.add_argument("--lengths", type=_int_list, default=list(DEFAULT_LENGTHS))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--instances", type=int, default=40, help="random instances per family")
    budget(sp)
    reporting(sp)
    sp.set_defaults(func=cmd_suite)

    sp = sub.add_parser("explore", help="sample colorings at the color-degree threshold")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--length", type=int, required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    budget(sp)
    reporting(sp)
    sp.set_defaults(func=cmd_explore)

    sp = sub.add_parser("core", help="peel vertices of in-degree zero")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--seed", type=int, help="random peel order")
    reporting(sp, text=False)
    sp.set_defaults(func=cmd_core)

    sp = sub.add_parser("vhigh", help="vertices of high in-degree")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--beta", default="0")
    reporting(sp, text=False)
    sp.set_defaults(func=cmd_vhigh)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphInputError, ContractViolation, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
