import json
import re

import pytest

from monoqp.cli import main


@pytest.fixture
def mapfile(tmp_path):
    def make(*images, name=None):
        p = tmp_path / (name or f"a{len(list(tmp_path.iterdir()))}.map")
        p.write_text(f"{len(images)}\n{' '.join(map(str, images))}\n")
        return str(p)
    return make


@pytest.fixture
def jsonfile(tmp_path):
    def make(obj, name="s.json"):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)
    return make


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


# --- analyze --------------------------------------------------------------

def test_analyze_text(capsys, mapfile):
    code, out, _ = run(capsys, "analyze", mapfile(2, 1, 1))
    assert code == 0
    assert "1 component" in out and "cn=2" in out and "1 branch len 1" in out
    code, out, _ = run(capsys, "analyze", mapfile(2, 3, 4, 1))
    assert "cn=4" in out and "no branches" in out


def test_analyze_json_round_trip(capsys, mapfile, tmp_path):
    code, first = run_json(capsys, "analyze", mapfile(2, 1, 1, 3, 5, 5))
    assert code == 0 and first["format"] == "monoqp/1" and first["command"] == "analyze"
    p = tmp_path / "report.json"
    p.write_text(json.dumps(first))
    code, second = run_json(capsys, "analyze", str(p))
    assert second == first


def test_analyze_schema(capsys, jsonfile):
    s = {"components": [{"cycle": 2, "attachments": [{"offset": 0, "tree": {"children": [{}]}}]},
                        {"chain": {"backward_infinite": True}}]}
    code, out, _ = run(capsys, "analyze", jsonfile(s))
    assert code == 0
    assert "schema, 2 components" in out and "Z-chain" in out


# --- decide ---------------------------------------------------------------

def test_decide_exit_codes(capsys, mapfile, jsonfile):
    code, out, _ = run(capsys, "decide", mapfile(1, 3, 2))
    assert code == 1 and "UnequalCycleLengths" in out
    assert run(capsys, "decide", mapfile(2, 3, 1))[0] == 0
    chain = {"components": [{"chain": {"backward_infinite": False}}]}
    assert run(capsys, "decide", "--schema", jsonfile(chain))[0] == 0


def test_decide_json(capsys, jsonfile):
    s = {"components": [{"cycle": 1, "attachments": [
        {"offset": 0, "tree": {"children": [{"infinite_tail": True}]}}]}]}
    code, r = run_json(capsys, "decide", "--schema", jsonfile(s))
    assert code == 1
    assert r["verdict"]["violation"] == "InfiniteBranch"
    assert r["verdict"]["result"] == "NotQuasiProjective"


def test_decide_schema_flag_needs_schema(capsys, mapfile):
    assert run(capsys, "decide", "--schema", mapfile(1))[0] == 2


# --- verify ---------------------------------------------------------------

def test_verify(capsys, mapfile):
    code, out, _ = run(capsys, "verify", mapfile(1, 3, 2))
    assert code == 1 and "witness" in out and "definitions agree" in out
    code, out, _ = run(capsys, "verify", mapfile(1))
    assert code == 0 and "general: QuasiProjective" in out


def test_verify_reports_disagreement(capsys, mapfile):
    code, r = run_json(capsys, "verify", mapfile(1, 1, 1, 4, 4))
    assert code == 1
    assert r["agree"] is False
    assert r["definitions"]["js"]["result"] == "QuasiProjective"
    assert r["decider"]["result"] == "NotQuasiProjective"


def test_verify_guard(capsys, mapfile, monkeypatch):
    code, _, err = run(capsys, "verify", mapfile(*range(1, 8)))
    assert code == 2 and "size guard" in err
    assert run(capsys, "verify", "--definition", "js", "--max-n", "7", mapfile(2, 3, 4, 5, 6, 7, 1))[0] == 0
    monkeypatch.setenv("MONOQP_MAX_N", "2")
    assert run(capsys, "verify", mapfile(1, 1, 1))[0] == 2


def test_verify_canonical_only(capsys, mapfile):
    code, r = run_json(capsys, "verify", "--canonical-only", "--definition", "general", mapfile(2, 1))
    assert code == 0 and list(r["definitions"]) == ["general"]


# --- quotient -------------------------------------------------------------

def test_quotient(capsys, mapfile):
    code, out, _ = run(capsys, "quotient", mapfile(2, 1, 1), "--subalgebra", "1,2")
    assert code == 0
    assert "{1,2} {3}" in out
    assert out.strip().endswith("2\n1 1")
    code, r = run_json(capsys, "quotient", mapfile(2, 1, 1), "--subalgebra", "1,2,3")
    assert r["classes"] == [[1, 2, 3]]


def test_quotient_rejects_open_set(capsys, mapfile):
    code, _, err = run(capsys, "quotient", mapfile(2, 1, 1), "--subalgebra", "3")
    assert code == 2 and "not closed" in err
    assert run(capsys, "quotient", mapfile(1), "--subalgebra", "x")[0] == 2


# --- homs -----------------------------------------------------------------

def test_homs(capsys, mapfile):
    c6, c3, c2 = mapfile(2, 3, 4, 5, 6, 1), mapfile(2, 3, 1), mapfile(2, 1)
    assert run(capsys, "homs", c6, c3, "--count")[1].strip() == "3"
    assert run(capsys, "homs", c3, c2, "--count")[1].strip() == "0"
    assert run(capsys, "homs", c3, "--endo", "--count")[1].strip() == "3"
    code, r = run_json(capsys, "homs", mapfile(2, 1, 1), c2, "--epi")
    assert r["maps"] == [[1, 2, 2], [2, 1, 1]]
    assert run(capsys, "homs", c3)[0] == 2


# --- enumerate, random ----------------------------------------------------

def test_enumerate(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", "2")
    assert code == 0 and out.strip().endswith("3 algebras")
    code, r = run_json(capsys, "enumerate", "2", "--qp-only")
    assert {tuple(a["images"]) for a in r["algebras"]} == {(1, 1), (1, 2), (2, 1)}
    code, r = run_json(capsys, "enumerate", "3", "--qp-only", "--export", str(tmp_path / "x"))
    assert r["count"] == 6
    assert len(list((tmp_path / "x").glob("*.map"))) == 7
    assert run(capsys, "enumerate", "0")[0] == 2
    assert run(capsys, "enumerate", "9")[0] == 2


def test_random(capsys):
    a = run(capsys, "random", "6", "--seed", "7")
    assert a == run(capsys, "random", "6", "--seed", "7")
    assert a[0] == 0 and a[1].splitlines()[0] == "6"
    assert run(capsys, "random", "6")[0] == 2


# --- dot ------------------------------------------------------------------

DOT_LINE = re.compile(r"^\s*(\d+( -> \d+)?( \[[^\]]*\])?;|node \[[^\]]*\];)$")


def check_dot(text):
    lines = text.strip().splitlines()
    assert lines[0] == "digraph monounary {" and lines[-1] == "}"
    for ln in lines[1:-1]:
        assert DOT_LINE.match(ln), ln
    return [ln for ln in lines if "->" in ln]


def test_dot(capsys, mapfile):
    code, out, _ = run(capsys, "dot", mapfile(1))
    assert code == 0
    assert check_dot(out) == ["  1 -> 1;"]
    out = run(capsys, "dot", mapfile(2, 1, 1))[1]
    assert len(check_dot(out)) == 3
    assert out.count("doublecircle") == 2


# --- errors ---------------------------------------------------------------

def test_parse_errors(capsys, tmp_path):
    bad = tmp_path / "bad.map"
    bad.write_text("3\n1 2\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and err.startswith("monoqp: error:")
    assert run(capsys, "analyze", str(tmp_path / "missing.map"))[0] == 2
    js = tmp_path / "bad.json"
    js.write_text("{nope")
    assert run(capsys, "decide", str(js))[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys)[0] == 2
