import io
import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import pytest

from tropos import cli
from tropos.trop import TropMatrix

CORPUS = sorted(p for p in resources.files("tropos").joinpath("corpus").iterdir() if p.name.endswith(".json"))
CASES = [(p.name, k, case) for p in CORPUS for k, case in enumerate(json.loads(p.read_text())["cases"])]


def run(command, data, *flags):
    return cli.run([command, *flags], stdin=io.StringIO(json.dumps(data)))


def test_corpus_has_all_files():
    assert len(CORPUS) == 14


@pytest.mark.parametrize("name,k,case", CASES, ids=[f"{n[:-5]}-{k}" for n, k, _ in CASES])
def test_corpus_case(name, k, case):
    doc, code = run(case["command"], case["input"], *case["flags"])
    assert code == case["exit_code"], doc
    assert doc["status"] == case["status"]
    assert doc["input"] == case["input"]
    for key, value in case.get("expected", {}).items():
        assert doc["result"][key] == value, key
    for key, items in case.get("contains", {}).items():
        for item in items:
            assert item in doc["result"][key], (key, item)


def test_kleene_check_witness_is_one_based():
    doc, code = run("kleene-check", {"matrix": [[0, 0, 1], [0, 0, 0], [0, 0, 0]]})
    assert code == 1
    assert doc["status"] == "violation"
    assert doc["witness"] == {"kind": "triangle", "indices": [1, 2, 3]}


def test_empty_witness():
    doc, code = run("kleene-star", {"matrix": [[0, 1], [-2, 0]]})
    assert code == 1 and doc["status"] == "empty"
    assert doc["witness"] == {"cycle": [1, 2, 1], "weight": -1}
    doc, code = run("integer-points", {"matrix": [[0, 1], [-2, 0]]})
    assert code == 1 and doc["status"] == "empty"


def test_usage_errors():
    assert run("pz", {"points": "x"})[1] == 2
    assert run("kleene-star", {"matrix": [[0, "oops"], [0, 0]]})[1] == 2
    assert run("kleene-star", {})[1] == 2
    assert run("nope", {})[1] == 2
    assert cli.run(["pz"], stdin=io.StringIO("{not json"))[1] == 2
    assert run("chamber-order", {"sigma": [1, 1], "u": [0, 0]})[1] == 2


def test_domain_errors():
    assert run("ideal-classes", {"matrix": [[0, 0], [0, 0]]})[1] == 1
    assert run("truncated-region", {"matrix": [[0, 1, 5], [1, 0, 1], [1, 1, 0]]})[1] == 1
    assert run("val", {"p": 4, "value": 3})[1] == 1
    doc, code = run("conjecture-check", {"matrix": [[0, 1, 1], [1, 0, 1], [1, 1, 0]], "max_rays": 5})
    assert code == 1 and doc["status"] == "limit"


def test_infinity_roundtrip():
    doc, code = run("kleene-star", {"matrix": [[0, 2, "inf"], ["inf", 0, 3], ["inf", "inf", 0]]})
    assert code == 0
    M = doc["result"]["matrix"]
    assert M == [[0, 2, 5], ["inf", 0, 3], ["inf", "inf", 0]]
    again, _ = run("kleene-star", {"matrix": M})
    assert again["result"]["matrix"] == M
    assert cli.parse_matrix(M) == TropMatrix([[0, 2, 5], [float("inf"), 0, 3], [float("inf")] * 2 + [0]])


def test_vec_format():
    doc, _ = run("pz", {"points": [[-2, -1, 0], [2, 1, 0], [-1, 3, 0]]}, "--format", "vec")
    assert doc["result"]["matrix"] == [1, 2, 4, 3, 2, 1]


def test_semiring_flag():
    doc, _ = run("vertices", {"matrix": [[0, 1, 2], [4, 0, 3], [2, 1, 0]]}, "--semiring", "max")
    assert set(doc["result"]) == {"max", "full_dimensional"}


def test_seeded_chamber_order_is_reproducible():
    a = cli.dumps(run("chamber-order", {"d": 4}, "--seed", "7")[0])
    b = cli.dumps(run("chamber-order", {"d": 4}, "--seed", "7")[0])
    assert a == b
    doc = json.loads(a)
    assert sum(doc["result"]["u"]) == 0


def test_threads_variable(monkeypatch):
    monkeypatch.setenv("TROPOS_THREADS", "2")
    assert run("jacobson", {"matrix": [[0, 1], [1, 0]]})[1] == 0
    monkeypatch.setenv("TROPOS_THREADS", "zero")
    assert run("jacobson", {"matrix": [[0, 1], [1, 0]]})[1] == 2


def test_console_script_is_byte_identical(tmp_path: Path):
    inp = tmp_path / "in.json"
    inp.write_text(json.dumps({"matrix": [[0, 1, 1], [1, 0, 1], [1, 1, 0]]}))
    cmd = [sys.executable, "-m", "tropos.cli", "truncated-region", str(inp), "--format", "vec"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    assert json.loads(first)["result"]["n_vertices"] == 36
    bad = subprocess.run([sys.executable, "-m", "tropos.cli", "kleene-check", str(tmp_path / "missing.json")],
                         capture_output=True)
    assert bad.returncode == 2
