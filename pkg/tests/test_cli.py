import csv
import io
import json
from pathlib import Path

import pytest

from seqspace_greedy.cli import EXIT_BUDGET, EXIT_EXPECT, EXIT_INPUT, EXIT_OK, RunConfig, main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def cfg(name):
    return str(CONFIGS / name)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_lp2(capsys):
    code, out, _ = run(capsys, "analyze", "--space", cfg("lp2.json"))
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["verdict"] == "holds"
    assert "verdict: = l_2; unit basis greedy" in rep["summary"]
    assert rep["democracy"]["rows"][-1]["ratio"] == 1


def test_analyze_sqrtlog(capsys):
    code, out, _ = run(capsys, "analyze", "--space", cfg("nakano_sqrtlog_to_1.json"))
    assert code == EXIT_OK
    assert "verdict: not l_1; no greedy basis" in json.loads(out)["summary"]


def test_analyze_marcinkiewicz(capsys):
    code, out, _ = run(capsys, "analyze", "--space", cfg("marcinkiewicz_p2.json"))
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["weight_properties"]["regularity"] <= 2
    assert rep["weight_properties"]["submultiplicativity"] == pytest.approx(1.0, abs=1e-12)
    assert "fundamental_N_over_s_N" in rep


@pytest.mark.parametrize("name", sorted(p.name for p in CONFIGS.glob("*.json") if p.name != "probe.json"))
def test_analyze_every_config(capsys, name):
    code, out, _ = run(capsys, "analyze", "--space", cfg(name), "--Nmax", "8", "--trials", "4")
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] in ("holds", "fails", "inconclusive")


def test_table_lp2(capsys):
    code, out, _ = run(capsys, "table", "--space", cfg("lp2.json"), "--Nmax", "64", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK and len(rows) == 64
    assert {float(r["ratio"]) for r in rows} == {1.0}


def test_table_alternating(capsys):
    code, out, _ = run(capsys, "table", "--space", cfg("nakano_alt12.json"), "--Nmax", "64", "--window", "128", "--format", "csv")
    last = list(csv.DictReader(io.StringIO(out)))[-1]
    assert code == EXIT_OK
    assert last["N"] == "64"
    assert float(last["ratio"]) == pytest.approx(8.0, abs=1e-9)


def test_table_greedy_probe(capsys):
    code, out, _ = run(capsys, "table", "--greedy", "--space", cfg("nakano_alt12.json"), "--vector", cfg("probe.json"), "--format", "csv")
    assert code == EXIT_OK
    assert "1.1790901197" in out


def test_criteria_expect(capsys):
    code, _, err = run(capsys, "criteria", "--space", cfg("nakano_sqrtlog_to_1.json"), "--expect", "holds")
    assert code == EXIT_EXPECT and "expectation mismatch" in err
    code, _, _ = run(capsys, "criteria", "--space", cfg("nakano_log_to_1.json"), "--expect", "holds")
    assert code == EXIT_OK
    code, _, _ = run(capsys, "criteria", "--space", cfg("flow_invlog.json"), "--expect", "fails")
    assert code == EXIT_OK


def test_blocks(capsys):
    code, out, _ = run(capsys, "blocks", "--space", cfg("orlicz_f11.json"), "--lengths", "2,4,8")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["isometry"]["passed"] is True


def test_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "nakano",\n "exponents": [}')
    code, _, err = run(capsys, "analyze", "--space", str(bad))
    assert code == EXIT_INPUT
    assert "line 2 column" in err


def test_missing_space(capsys):
    code, _, _ = run(capsys, "analyze")
    assert code == EXIT_INPUT


def test_budget_exit(capsys, tmp_path):
    vec = tmp_path / "big.json"
    vec.write_text(json.dumps({"entries": [[i, 1.0 + i / 100] for i in range(1, 24)]}))
    code, _, err = run(capsys, "table", "--greedy", "--space", cfg("lp2.json"), "--vector", str(vec))
    assert code == EXIT_BUDGET
    assert "budget" in err


def test_run_config_validation():
    with pytest.raises(Exception):
        RunConfig(command="table", space="x", N_max=10, window=5)
    with pytest.raises(Exception):
        RunConfig(command="table", space="x", tol=0)


def test_byte_identical_runs(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["analyze", "--space", cfg("nakano_log_to_1.json"), "--seed", "3"]
    assert main(argv + ["--out", str(a)]) == EXIT_OK
    assert main(argv + ["--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
