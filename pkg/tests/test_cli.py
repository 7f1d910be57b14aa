import json
import subprocess
import sys

import pytest

from quditldpc.cli import load_golden, main, parse_grid

BB24 = {"family": "bb", "field": "3", "l": 4, "m": 3, "A": "x + x^2", "B": "x^3 + 2*y + 2*y^2"}


def run(capsys, *argv):
    rc = main(list(argv))
    return rc, capsys.readouterr().out


def test_params(tmp_path, capsys):
    p = tmp_path / "bb24.json"
    p.write_text(json.dumps(BB24))
    rc, out = run(capsys, "params", "--code", str(p))
    env = json.loads(out)
    assert rc == 0
    assert env["results"]["n"] == 24 and env["results"]["k"] == 4
    assert set(env) == {"tool_version", "field", "inputs", "results", "timing"}


def test_build_then_params(tmp_path, capsys):
    out = tmp_path / "lc.json"
    rc, _ = run(capsys, "build", "lacross", "--field", "7", "--n-c", "5", "--k", "2", "--alphas", "6,5,1", "--out", str(out))
    assert rc == 0
    rc, text = run(capsys, "params", "--code", str(out))
    assert json.loads(text)["results"]["n"] == 34
    rc, _ = run(capsys, "build", "bb", "--field", "3", "--l", "4")
    assert rc == 2


def test_distance(tmp_path, capsys):
    p = tmp_path / "bb24.json"
    p.write_text(json.dumps(BB24))
    rc, out = run(capsys, "distance", "--code", str(p), "--cap", "6", "--lex-min")
    assert rc == 0 and json.loads(out)["results"]["d"] == 4
    rc, out = run(capsys, "distance", "--code", str(p), "--cap", "2")
    assert rc == 3 and json.loads(out)["results"]["d"] is None


def test_tables_and_corrupted_golden(tmp_path, capsys):
    rc, _ = run(capsys, "tables")
    assert rc == 0
    g = load_golden()
    g["table2"][0]["k"] = 6
    bad = tmp_path / "golden.json"
    bad.write_text(json.dumps(g))
    rc, out = run(capsys, "tables", "--golden", str(bad))
    assert rc == 1
    assert json.loads(out)["results"]["mismatches"][0]["row"] == 0


def test_simulate_and_fit(tmp_path, capsys):
    p = tmp_path / "bb24.json"
    p.write_text(json.dumps(BB24))
    rec = tmp_path / "rec.json"
    rc, _ = run(capsys, "simulate", "--code", str(p), "--grid", "0.04:0.12:4", "--trials", "2000", "--seed", "3", "--out", str(rec))
    assert rc == 0
    csv = tmp_path / "fit.csv"
    rc, out = run(capsys, "fit", "--in", str(rec), "--csv", str(csv))
    assert rc == 0 and "d_fit" in json.loads(out)["results"]
    assert csv.read_text().startswith("p_err,")
    rc, out = run(capsys, "fit", "--synthetic")
    assert abs(json.loads(out)["results"]["d_fit"] - 4) < 1e-6


def test_weights(capsys):
    rc, out = run(capsys, "weights", "--q", "3", "--r-max", "4", "--r-min", "3")
    assert rc == 0 and out.splitlines() == ["r,min_w,max_w", "3,3,4", "4,3,5"]


def test_usage_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    rc, out = run(capsys, "--json", "params", "--code", str(tmp_path / "missing.json"))
    assert rc == 2 and json.loads(out)["error"] == "UsageError"
    rc, _ = run(capsys, "fit")
    assert rc == 2


def test_parse_grid():
    assert parse_grid("0.1:0.3:3") == pytest.approx([0.1, 0.2, 0.3])
    assert parse_grid("0.01,0.02") == [0.01, 0.02]


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "quditldpc.cli", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "0.1.0"
