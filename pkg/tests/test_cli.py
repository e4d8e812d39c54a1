import io
import json
import subprocess
import sys

import jsonschema
import pytest

from surfsing.cli import main
from surfsing.graphs import dynkin, from_matrix, parse_resolution_graph, serialize_resolution_graph, write_graph
from surfsing.report import load_schema, validate


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


@pytest.fixture
def graphs(tmp_path):
    paths = {}
    for name, g in [("a3", dynkin("A", 3)), ("e8", dynkin("E", 8)),
                    ("cone4", from_matrix([-4], [], [3])), ("q", from_matrix([-3], []))]:
        p = tmp_path / f"{name}.graph"
        write_graph(g, p)
        paths[name] = str(p)
    return paths


def test_analyze_du_val(graphs):
    code, text = run(["analyze", graphs["a3"], "--json"])
    assert code == 0
    r = json.loads(text)
    validate(r)
    assert r["lattice"]["z_k"] == ["0", "0", "0"] and r["lattice"]["du_val"]
    assert r["cycles"]["min_chi"] == "0" and r["cycles"]["z_min"] == ["1", "1", "1"]
    assert r["smoothing"] is None


def test_analyze_cone(graphs):
    code, text = run(["analyze", graphs["cone4"], "--pg", "4", "--e", "3", "--gorenstein", "--json"])
    assert code == 0
    r = json.loads(text)
    validate(r)
    assert r["smoothing"]["invariants"]["sigma"] == "-17"
    assert all(row["status"] != "fails" for row in r["smoothing"]["bounds"])
    assert r["smoothing"]["inputs"]["nu"]["source"] == "proxy"
    code, text = run(["analyze", graphs["cone4"], "--pg", "4", "--nu", "4", "--json"])
    r = json.loads(text)
    assert r["smoothing"]["inputs"]["nu"]["source"] == "user"
    b12 = next(row for row in r["smoothing"]["bounds"] if row["id"] == "B12")
    assert b12["status"] == "holds" and b12["margin"] == "10"


def test_analyze_e8(graphs):
    code, text = run(["analyze", graphs["e8"], "--json"])
    r = json.loads(text)
    assert code == 0 and r["lattice"]["unimodular"]
    assert r["characteristic"]["elkies"]["slack"] == "8"


def test_analyze_human_output_uses_same_report(graphs):
    code, text = run(["analyze", graphs["cone4"], "--pg", "4"])
    assert code == 0
    assert "sigma = -17" in text and "B7   holds  17 >= 7  margin 10" in text


def test_analyze_zmax_and_t(graphs):
    code, text = run(["analyze", graphs["cone4"], "--pg", "4", "--zmax", "1", "--t", "0", "--json"])
    r = json.loads(text)
    assert code == 0 and r["smoothing"]["inputs"]["z"]["source"] == "user"
    b8 = next(row for row in r["smoothing"]["bounds"] if row["id"] == "B8")
    assert "t = 0" in b8["notes"]


def test_analyze_errors(graphs, tmp_path, capsys):
    bad = tmp_path / "bad.graph"
    bad.write_text("vertex a -2 0\nedge a b\n")
    assert run(["analyze", str(bad)])[0] == 1
    assert "line 2" in capsys.readouterr().err
    assert run(["analyze", str(tmp_path / "missing.graph")])[0] == 1
    # Gorenstein flag on a non-numerically-Gorenstein graph
    assert run(["analyze", graphs["q"], "--pg", "0", "--gorenstein"])[0] == 1
    assert run(["analyze", graphs["cone4"], "--pg", "4", "--zmax", "1,2"])[0] == 1
    assert run(["analyze", graphs["cone4"], "--pg", "4", "--zmax", "-1"])[0] == 1
    assert run(["analyze", graphs["a3"], "--pg", "0", "--zmax", "1,1,2"])[0] == 1  # not anti-nef
    assert run(["analyze", graphs["cone4"], "--bogus"])[0] == 1


def test_analyze_budget_exhaustion(graphs, capsys):
    assert run(["analyze", graphs["e8"], "--budget", "2"])[0] == 2
    assert "budget" in capsys.readouterr().err


def test_non_gorenstein_analysis(graphs):
    code, text = run(["analyze", graphs["q"], "--pg", "0", "--e", "4", "--json"])
    r = json.loads(text)
    assert code == 0 and r["smoothing"]["invariants"] is None
    code, text = run(["analyze", graphs["q"], "--pg", "0", "--e", "4", "--mu", "1", "--json"])
    assert json.loads(text)["smoothing"]["invariants"]["mu"] == "1"


def test_scan_deterministic_and_valid():
    argv = ["conjecture-scan", "--count", "40", "--max-vertices", "6", "--seed", "1", "--json"]
    code1, a = run(argv)
    code2, b = run(argv)
    assert code1 == code2 == 0 and a == b
    r = json.loads(a)
    validate(r)
    assert r["checked"] == 40 and r["violations"] == []


def test_scan_empty():
    code, text = run(["conjecture-scan", "--count", "0", "--max-vertices", "6", "--seed", "1", "--json"])
    r = json.loads(text)
    assert code == 0 and r["checked"] == 0 and r["results"] == []


def test_scan_violations_and_exit_code():
    argv = ["conjecture-scan", "--count", "60", "--max-vertices", "4", "--seed", "2", "--extra-edges", "2", "--json"]
    code, text = run(argv)
    r = json.loads(text)
    assert code == 0 and r["violations"]
    # each reported violation is a real one
    for i in r["violations"]:
        res = r["results"][i]
        g = parse_resolution_graph(res["graph"])
        assert serialize_resolution_graph(g) == res["graph"]
        assert not res["holds"] and res["margin"].startswith("-")
    assert run(argv + ["--fail-on-violation"])[0] == 3


def test_scan_bad_flags():
    assert run(["conjecture-scan", "--count", "-1", "--max-vertices", "3"])[0] == 1
    assert run(["conjecture-scan", "--count", "3"])[0] == 1
    assert run(["conjecture-scan", "--count", "3", "--max-vertices", "3", "--weights", "-3"])[0] == 1


def test_monomial_files(tmp_path):
    m = tmp_path / "m.ideal"
    m.write_text("vars 2\n1 0\n0 1\n")
    code, text = run(["monomial-verify", "--ideal", str(m), "--ideal", str(m), "--rays", "4", "--json"])
    r = json.loads(text)
    validate(r)
    e = r["results"][0]
    assert code == 0 and (e["lhs"], e["rhs"], e["strict"]) == ("4", "3", True)
    assert e["radial"] == {"samples": 4, "contained": 4, "holder": 4}
    code, text = run(["monomial-verify", "--ideal", str(m), "--ideal", str(m)])
    assert "lhs=4 rhs=3 margin=1 strict" in text


def test_monomial_random():
    code, text = run(["monomial-verify", "--random", "--vars", "1", "--count", "5", "--d", "3", "--seed", "4"])
    assert code == 0 and text.count("equality") == 5
    code, text = run(["monomial-verify", "--random", "--vars", "3", "--count", "50", "--d", "2", "--seed", "9", "--json"])
    r = json.loads(text)
    assert r["holds"] == r["strict"] == 50


def test_monomial_errors(tmp_path):
    bad = tmp_path / "bad.ideal"
    bad.write_text("vars 2\n1 0 0\n")
    assert run(["monomial-verify", "--ideal", str(bad)])[0] == 1
    other = tmp_path / "o.ideal"
    other.write_text("vars 3\n1 0 0\n0 1 0\n0 0 1\n")
    good = tmp_path / "g.ideal"
    good.write_text("vars 2\n1 0\n0 1\n")
    assert run(["monomial-verify", "--ideal", str(good), "--ideal", str(other)])[0] == 1
    assert run(["monomial-verify"])[0] == 1
    big = tmp_path / "big.ideal"
    big.write_text("vars 3\n1000 0 0\n0 1000 0\n0 0 1000\n")
    assert run(["monomial-verify", "--ideal", str(big), "--ideal", str(big)])[0] == 2


def test_generate(tmp_path):
    code, text = run(["generate", "--family", "cone", "--d", "5"])
    assert code == 0 and text == "vertex v0 -5 6\n"
    code, text = run(["generate", "--family", "chain", "--n", "4", "--w", "-2"])
    assert parse_resolution_graph(text) == dynkin("A", 4)
    a, b = tmp_path / "a.graph", tmp_path / "b.graph"
    for p in (a, b):
        assert run(["generate", "--family", "random", "--n", "7", "--seed", "3", "--out", str(p)])[0] == 0
    assert a.read_bytes() == b.read_bytes()
    code, text = run(["generate", "--family", "star", "--center", "-2", "--arm", "-2", "--arm", "-2", "--arm", "-2"])
    assert parse_resolution_graph(text) == dynkin("D", 4)
    code, text = run(["generate", "--family", "star", "--center", "-3", "--arm", "-2,-2", "--arm", "-3", "--arm", "-2"])
    assert code == 0 and text.count("vertex") == 5
    code, text = run(["generate", "--family", "random", "--n", "4", "--seed", "1", "--weights", "-4,-2"])
    assert code == 0 and all(-4 <= v.self_intersection <= -2 for v in parse_resolution_graph(text).vertices)
    assert run(["generate", "--family", "cone", "--d", "1"])[0] == 1
    assert run(["generate", "--family", "chain"])[0] == 1
    assert run(["generate", "--family", "star", "--arm", "-2", "--arm", "-2", "--arm", "-2", "--arm", "-2"])[0] == 1


def test_schemas_are_valid_documents():
    for kind in ("analysis", "conjecture-scan", "monomial-verify"):
        jsonschema.Draft202012Validator.check_schema(load_schema(kind))


def test_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "surfsing", "generate", "--family", "cone", "--d", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "vertex v0 -3 1\n"
