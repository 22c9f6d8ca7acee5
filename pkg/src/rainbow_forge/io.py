"""Graph and partition files.

Text form, one graph per file::

    # comment
    ecg 4            (or: dig 4)
    e 0 1 7          (edge u v color; ecg only)
    a 0 1            (arc u v; dig only)

The JSON mirror is ``{"kind", "n", "edges": [[u, v, c]], "arcs": [[u, v]],
"palette": {id: name}}``. Partitions are ``tri n`` followed by ``p v i``
lines, or JSON ``{"kind": "tri", "n", "part": [...]}``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .errors import GraphInputError
from .graph import Digraph, EdgeColoredGraph, TriPartition

Graph = Union[EdgeColoredGraph, Digraph]


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(tokens, lineno, count):
    if len(tokens) != count:
        raise GraphInputError(f"line {lineno}: expected {count} integers, got {tokens!r}")
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphInputError(f"line {lineno}: non-integer field in {tokens!r}") from None


def parse_text(text: str) -> Graph:
    lines = list(_lines(text))
    if not lines:
        raise GraphInputError("empty graph file")
    lineno, head = lines[0]
    if len(head) != 2 or head[0] not in ("ecg", "dig"):
        raise GraphInputError(f"line {lineno}: header must be 'ecg n' or 'dig n'")
    kind = head[0]
    (n,) = _ints(head[1:], lineno, 1)
    items = []
    for lineno, tok in lines[1:]:
        tag = tok[0]
        if kind == "ecg" and tag == "e":
            items.append(tuple(_ints(tok[1:], lineno, 3)))
        elif kind == "dig" and tag == "a":
            items.append(tuple(_ints(tok[1:], lineno, 2)))
        else:
            raise GraphInputError(f"line {lineno}: unexpected record {tag!r} in a {kind} file")
    if kind == "ecg":
        return EdgeColoredGraph(n, tuple(items))
    return Digraph(n, tuple(items))


def format_text(G: Graph) -> str:
    if isinstance(G, EdgeColoredGraph):
        body = [f"ecg {G.n}"] + [f"e {u} {v} {c}" for u, v, c in G.edges]
    else:
        body = [f"dig {G.n}"] + [f"a {u} {v}" for u, v in G.arcs]
    return "\n".join(body) + "\n"


def to_json_dict(G: Graph) -> dict:
    colored = isinstance(G, EdgeColoredGraph)
    return {
        "kind": "ecg" if colored else "dig",
        "n": G.n,
        "edges": [list(e) for e in G.edges] if colored else [],
        "arcs": [] if colored else [list(a) for a in G.arcs],
        "palette": {str(k): name for k, name in G.palette} if colored else {},
    }


def from_json_dict(d: dict) -> Graph:
    kind = d.get("kind")
    if kind == "ecg":
        palette = {int(k): v for k, v in d.get("palette", {}).items()}
        return EdgeColoredGraph.from_edges(int(d["n"]), d.get("edges", []), palette)
    if kind == "dig":
        return Digraph.from_arcs(int(d["n"]), d.get("arcs", []))
    raise GraphInputError(f"unknown graph kind {kind!r}")


def format_json(G: Graph) -> str:
    return json.dumps(to_json_dict(G), indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def parse_json(text: str) -> Graph:
    try:
        return from_json_dict(json.loads(text))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise GraphInputError(f"bad graph JSON: {exc}") from None


def loads(text: str) -> Graph:
    """Parse either format, sniffing JSON by its leading brace."""
    return parse_json(text) if text.lstrip().startswith("{") else parse_text(text)


def load(path) -> Graph:
    return loads(Path(path).read_text(encoding="utf-8"))


def dumps(G: Graph, fmt: str = "text") -> str:
    if fmt == "json":
        return format_json(G)
    if fmt == "text":
        return format_text(G)
    raise GraphInputError(f"unknown format {fmt!r}")


def save(G: Graph, path, fmt: str | None = None) -> None:
    fmt = fmt or ("json" if str(path).endswith(".json") else "text")
    Path(path).write_text(dumps(G, fmt), encoding="utf-8")


# --------------------------------------------------------------------------
# partitions


def dumps_partition(P: TriPartition, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps({"kind": "tri", "n": P.n, "part": list(P.part)}) + "\n"
    return "\n".join([f"tri {P.n}"] + [f"p {v} {p}" for v, p in enumerate(P.part)]) + "\n"


def loads_partition(text: str) -> TriPartition:
    if text.lstrip().startswith("{"):
        d = json.loads(text)
        part = d.get("part")
        if d.get("kind") != "tri" or part is None or len(part) != d.get("n"):
            raise GraphInputError("bad partition JSON")
        return TriPartition(tuple(part))
    lines = list(_lines(text))
    if not lines or lines[0][1][0] != "tri":
        raise GraphInputError("partition file must start with 'tri n'")
    (n,) = _ints(lines[0][1][1:], lines[0][0], 1)
    labels = [-1] * n
    for lineno, tok in lines[1:]:
        if tok[0] != "p":
            raise GraphInputError(f"line {lineno}: unexpected record {tok[0]!r}")
        v, i = _ints(tok[1:], lineno, 2)
        if not 0 <= v < n:
            raise GraphInputError(f"line {lineno}: vertex {v} out of range")
        labels[v] = i
    if -1 in labels:
        raise GraphInputError(f"vertex {labels.index(-1)} has no part")
    return TriPartition(tuple(labels))


def load_partition(path) -> TriPartition:
    return loads_partition(Path(path).read_text(encoding="utf-8"))


def save_partition(P: TriPartition, path) -> None:
    fmt = "json" if str(path).endswith(".json") else "text"
    Path(path).write_text(dumps_partition(P, fmt), encoding="utf-8")
