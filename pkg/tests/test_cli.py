import io
import json
import subprocess
import sys

import pytest

from grundykit.cli import main
from grundykit.exact import LIMIT_ENV
from grundykit.graph import parse_graph, path_graph, random_graph, serialize_graph


def cli(monkeypatch, capsys, *argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def sh(monkeypatch, capsys):
    monkeypatch.delenv(LIMIT_ENV, raising=False)

    def call(*argv, stdin=""):
        return cli(monkeypatch, capsys, *argv, stdin=stdin)

    return call


def test_gen_path_then_exact(sh):
    code, out, _ = sh("gen", "path", "4")
    assert code == 0 and out == "4\n0 1\n1 2\n2 3\n"
    code, out, _ = sh("exact", "grundy", stdin=out)
    assert code == 0
    data = json.loads(out)
    assert data["k"] == 3 and data["kind"] == "grundy"
    assert data["certificate"]["valid"] and data["certificate"]["k"] == 3


def test_cycle_square_pipeline(sh):
    _, c4, _ = sh("gen", "cycle", "4")
    code, sq, _ = sh("op", "power", "--k", "2", stdin=c4)
    assert code == 0
    _, out, _ = sh("exact", "grundy", stdin=sq)
    assert json.loads(out)["k"] == 4


def test_limit_exit_code(sh, tmp_path, monkeypatch):
    big = tmp_path / "big.txt"
    big.write_text(serialize_graph("edge_list", random_graph(30, 0.2, 1)))
    code, out, err = sh("exact", "grundy", str(big))
    assert code == 2 and out == "" and "limit" in err
    monkeypatch.setenv(LIMIT_ENV, "3")
    code, _, err = sh("exact", "proper", stdin="4\n0 1\n")
    assert code == 2 and "3" in err


def test_usage_errors_exit_one(sh):
    assert sh("frobnicate")[0] == 1
    assert sh("gen", "path", "4", "--bogus")[0] == 1
    assert sh("gen", "cycle", "2")[0] == 1
    assert sh("gen", "path", "x")[0] == 1
    assert sh("exact", "grundy", stdin="3\n0 9\n")[0] == 1
    assert sh("exact", "grundy", "/nonexistent/graph.txt")[0] == 1


def test_verify_exact_certificate(sh, tmp_path):
    g = tmp_path / "g.txt"
    g.write_text(serialize_graph("edge_list", random_graph(9, 0.4, 8)))
    for kind in ("proper", "grundy", "partial_grundy", "b_coloring"):
        code, cert, _ = sh("exact", kind, str(g))
        assert code == 0
        code, out, _ = sh("verify", kind, str(g), "-", stdin=cert)
        assert code == 0 and json.loads(out)["valid"]


def test_verify_reports_invalid(sh, tmp_path):
    g = tmp_path / "g.txt"
    g.write_text("2\n0 1\n")
    code, out, _ = sh("verify", "proper", str(g), "-", stdin="0 1\n1 1\n")
    assert code == 3
    assert json.loads(out)["counterexample"]["edge"] == [0, 1]
    assert sh("verify", "proper", str(g), "-", stdin="0 1\n")[0] == 1  # missing vertex
    assert sh("verify", "proper", str(g), "-", stdin="0 0\n1 1\n")[0] == 1  # color 0


def test_witness(sh):
    code, out, _ = sh("witness", "grundy", "4")
    data = json.loads(out)
    assert code == 0 and data["valid"] and data["k"] == 4 and data["vertex_count"] == 8
    assert sh("witness", "grundy", "0")[0] == 1
    assert sh("witness", "grundy", "17")[0] == 2


def test_bounds(sh):
    code, out, _ = sh("bounds", stdin="4\n0 1\n1 2\n2 3\n")
    assert code == 0
    assert json.loads(out) == {"clique_lower": 2, "m_degree": 2, "max_degree_plus_one": 3}


def test_chordal(sh):
    _, c5, _ = sh("gen", "cycle", "5")
    code, out, _ = sh("chordal", "peo", stdin=c5)
    assert code == 3 and json.loads(out)["chordal"] is False
    _, p4, _ = sh("gen", "path", "4")
    code, out, _ = sh("chordal", "color", stdin=p4)
    assert code == 0 and json.loads(out)["omega"] == 2
    code, out, _ = sh("chordal", "peo", stdin=p4)
    assert code == 0 and sorted(json.loads(out)["order"]) == [0, 1, 2, 3]


def test_formats(sh):
    code, out, _ = sh("gen", "path", "3", "--format", "dimacs")
    assert code == 0 and out.startswith("p edge 3 2")
    assert parse_graph("dimacs", out) == path_graph(3)
    code, out, _ = sh("exact", "grundy", "--format", "dot", stdin="3\n0 1\n1 2\n")
    assert code == 0 and out.startswith("graph G {") and "fillcolor" in out
    code, out, _ = sh("--format", "dimacs", "gen", "complete", "3")
    assert out.startswith("p edge 3 3")


def test_products(sh, tmp_path):
    a = tmp_path / "a.txt"
    a.write_text("2\n0 1\n")
    _, out, _ = sh("op", "product", str(a), str(a))
    assert out.splitlines()[0] == "4" and len(out.splitlines()) == 5
    _, out, _ = sh("op", "conormal", str(a), "-", stdin="2\n0 1\n")
    assert len(out.splitlines()) == 7
    assert sh("op", "product", str(a))[0] == 1


def test_random_generators_use_seed(sh):
    a = sh("gen", "random", "10", "0.5", "--seed", "3")[1]
    assert a == sh("--seed", "3", "gen", "random", "10", "0.5")[1]
    assert a != sh("gen", "random", "10", "0.5", "--seed", "4")[1]
    assert sh("gen", "interval", "8", "--seed", "1")[1] == sh("gen", "interval", "8", "--seed", "1")[1]


def test_sim(sh, tmp_path):
    scenario = {
        "range": 2.5, "rule": "strict_mex", "max_rounds": 10, "seed": 0,
        "nodes": [{"id": i, "x": i, "y": 0, "channel": 1} for i in range(3)],
        "events": [],
    }
    path = tmp_path / "s.json"
    path.write_text(json.dumps(scenario))
    trace = tmp_path / "t.csv"
    code, out, _ = sh("sim", str(path), "--trace", str(trace))
    data = json.loads(out)
    assert code == 0 and data["converged"]
    assert [n["channel"] for n in data["nodes"]] == [2, 3, 1]
    assert trace.read_text().splitlines()[0] == "round,moves,conflicts,messages,colors_in_use,stable"

    scenario["max_rounds"] = 1
    path.write_text(json.dumps(scenario))
    assert sh("sim", str(path))[0] == 3
    path.write_text("{not json")
    assert sh("sim", str(path))[0] == 1


def test_console_script_pipeline():
    gen = subprocess.run([sys.executable, "-m", "grundykit", "gen", "cycle", "4"],
                         capture_output=True, text=True, check=True)
    out = subprocess.run([sys.executable, "-m", "grundykit", "exact", "grundy"],
                         input=gen.stdout, capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["k"] == 2
