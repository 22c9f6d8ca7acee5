import json

import pytest

from rainbow_forge import io
from rainbow_forge.cli import main
from rainbow_forge.graph import Digraph
from rainbow_forge.report import VerificationSuite


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def cplus9(tmp_path, capsys):
    g, p = tmp_path / "g.txt", tmp_path / "p.txt"
    assert run(capsys, "generate", "--kind", "cplus", "--n", 9, "--out", g, "--partition-out", p)[0] == 0
    return g, p


def test_generate_to_stdout(capsys):
    code, out, _ = run(capsys, "generate", "--kind", "blowup", "--sizes", "1,1,1")
    assert code == 0 and io.loads(out) == Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])


def test_search_count_and_first(cplus9, capsys):
    g, _ = cplus9
    code, out, _ = run(capsys, "search", "--graph", g, "--kind", "rainbow", "--length", 6, "--count")
    assert code == 0 and json.loads(out)["count"] == 108
    code, out, _ = run(capsys, "search", "--graph", g, "--kind", "rainbow", "--length", 4)
    assert code == 0 and json.loads(out)["found"] is False


def test_directed_and_walk_search(tmp_path, capsys):
    path = tmp_path / "d.json"
    io.save(Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)]), path)
    code, out, _ = run(capsys, "search", "--graph", path, "--kind", "directed", "--length", 3)
    assert code == 0 and json.loads(out)["found"]
    code, out, _ = run(capsys, "search", "--graph", path, "--kind", "walk", "--length", 6)
    assert code == 0 and json.loads(out)["walk"] is not None
    code, out, _ = run(capsys, "search", "--graph", path, "--kind", "walk", "--length", 4)
    assert json.loads(out)["found"] is False


def test_search_budget_exit_code(cplus9, capsys):
    g, _ = cplus9
    code, _, err = run(capsys, "search", "--graph", g, "--kind", "rainbow", "--length", 8, "--count",
                       "--budget", 5)
    assert code == 3 and "budget" in err


def test_input_errors_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("ecg 2\ne 0 0 1\n")
    assert run(capsys, "search", "--graph", bad, "--kind", "rainbow", "--length", 3)[0] == 2
    assert run(capsys, "search", "--graph", tmp_path / "missing", "--kind", "rainbow", "--length", 3)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["search", "--kind", "rainbow"])
    assert exc.value.code == 2


def test_wrong_graph_kind_for_command(cplus9, capsys):
    g, _ = cplus9
    assert run(capsys, "search", "--graph", g, "--kind", "directed", "--length", 3)[0] == 2
    assert run(capsys, "core", "--graph", g)[0] == 2


def test_transform_round_trip(tmp_path, capsys):
    d = tmp_path / "d.txt"
    io.save(Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)]), d)
    c = tmp_path / "c.json"
    assert run(capsys, "transform", "--graph", d, "--to", "determined", "--out", c, "--graph-format", "json")[0] == 0
    code, out, _ = run(capsys, "transform", "--graph", c, "--to", "associated")
    # each vertex keeps its out-arc and gains one arc for its incoming color class
    back = io.loads(out)
    assert code == 0 and set(io.load(d).arcs) <= set(back.arcs) and len(back.arcs) == 6
    bad = tmp_path / "two.txt"
    io.save(Digraph.from_arcs(2, [(0, 1), (1, 0)]), bad)
    assert run(capsys, "transform", "--graph", bad, "--to", "determined")[0] == 2


def test_analyze_with_partition(cplus9, capsys):
    g, p = cplus9
    code, out, _ = run(capsys, "analyze", "--graph", g, "--partition", p, "--lambda", "1/100")
    rep = json.loads(out)["structure"]
    assert code == 0 and rep["deltas"] == [0, 0, 0] and rep["amenable"] == [0, 1, 2]


def test_analyze_by_search(tmp_path, capsys):
    g = tmp_path / "b.txt"
    run(capsys, "generate", "--kind", "blowup", "--sizes", "2,2,2", "--out", g)
    code, out, _ = run(capsys, "analyze", "--graph", g, "--search", "--lambda", "0")
    res = json.loads(out)["search"]
    assert code == 0 and res["found"] and res["complete"]


def test_verify_construction_reports(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"kind": "matching", "n": 8}))
    report = tmp_path / "r.json"
    assert run(capsys, "verify-construction", "--spec", spec, "--report", report)[0] == 0
    suite = VerificationSuite.from_json(report.read_text())
    assert suite.ok and suite.counts()["pass"] > 0
    code, out, _ = run(capsys, "verify-construction", "--kind", "cplus", "--n", 9, "--format", "text")
    lines = out.strip().splitlines()
    assert code == 0 and all(l.split()[0] in {"PASS", "VACUOUS", "SKIPPED"} for l in lines[:-1])
    assert lines[-1].startswith("pass=")
    spec.write_text("{")
    assert run(capsys, "verify-construction", "--spec", spec)[0] == 2


def test_suite_command(capsys):
    code, out, _ = run(capsys, "suite", "--max-n", 6, "--instances", 2)
    summary = json.loads(out)["summary"]
    assert code == 0 and summary["fail"] == 0 and summary["skipped"] == 2
    code, out, _ = run(capsys, "suite", "--max-n", 6, "--instances", 2, "--budget", 1)
    assert code == 0 and json.loads(out)["summary"]["inconclusive"] > 0


def test_explore_command_is_deterministic(capsys):
    first = run(capsys, "explore", "--n", 7, "--length", 4, "--trials", 3, "--seed", 4)
    second = run(capsys, "explore", "--n", 7, "--length", 4, "--trials", 3, "--seed", 4)
    assert first == second and first[0] == 0
    assert json.loads(first[1])["accepted"] == 3


def test_core_and_vhigh(tmp_path, capsys):
    d = tmp_path / "d.txt"
    io.save(Digraph.from_arcs(4, [(1, 2), (2, 3), (3, 1), (0, 1)]), d)
    code, out, _ = run(capsys, "core", "--graph", d, "--seed", 3)
    assert code == 0 and json.loads(out)["vertices"] == [1, 2, 3]
    code, out, _ = run(capsys, "vhigh", "--graph", d, "--beta", "0")
    assert code == 0 and json.loads(out)["vertices"] == [1, 2, 3]
    assert run(capsys, "vhigh", "--graph", d, "--beta", "-1")[0] == 2
