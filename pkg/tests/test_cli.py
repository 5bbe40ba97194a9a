import json
import os
import shutil
import subprocess
import sys

import pytest

from weylstrata import cli
from weylstrata.unipotent import data_dir


def run(*args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    return subprocess.run([sys.executable, "-m", "weylstrata.cli", *args],
                          capture_output=True, text=True, env=e)


def counts(stdout):
    doc = json.loads(stdout)
    return len(doc["strata"]), len(doc["sheets"])


def test_compute_sl2():
    r = run("compute", "--type", "A1", "--char", "0")
    assert r.returncode == 0 and counts(r.stdout) == (2, 3)
    r = run("compute", "--type", "A1", "--char", "2")
    assert r.returncode == 0 and counts(r.stdout) == (2, 2)


def test_compute_headers():
    doc = json.loads(run("compute", "--type", "C2").stdout)
    assert doc["schema_version"] == "1.0"
    assert doc["data_provenance"]["C2"]["validation_suite"]
    assert doc["verification"]["passed"]


@pytest.mark.parametrize("args", [
    ["compute", "--type", "Z9"],
    ["compute", "--type", "A1", "--char", "4"],
    ["compute", "--type", "C2", "--total-rank", "1"],
    ["compute", "--type", "B5", "--order-cap", "100"],
    ["compute", "--type", "A1", "--order-cap", "0"],
    ["compute", "--type", "A6"],
    ["chartab", "--type", "A1", "--format", "yaml"],
    ["frobnicate", "--type", "A1"],
])
def test_invalid_config_exits_2(args):
    assert run(*args).returncode == 2


@pytest.mark.parametrize("args", [["--type", "C2"], ["--type", "G2"], ["--type", "A2", "--char", "5"]])
def test_verify_passes(args):
    r = run("verify", *args)
    assert r.returncode == 0, r.stdout + r.stderr
    assert json.loads(r.stdout)["passed"]


def test_verify_failure_exits_1(monkeypatch, capsys):
    def broken(comp):
        return {"theorem.phi_constancy": [{"J": "L0:x", "chain": ["T", "G"]}]}

    monkeypatch.setattr(cli, "invariant_suite", broken)
    assert cli.main(["verify", "--type", "A1"]) == 1
    out = json.loads(capsys.readouterr().out)
    assert not out["passed"] and out["checks"]["theorem.phi_constancy"]["failures"]


def test_integrity_error_exits_3(tmp_path):
    for f in data_dir().glob("*.json"):
        shutil.copy(f, tmp_path / f.name)
    doc = json.loads((tmp_path / "springer_C2.json").read_text())
    doc["classes"][0]["dim"] += 2
    (tmp_path / "springer_C2.json").write_text(json.dumps(doc))
    r = run("compute", "--type", "C2", env={"WEYL_STRATA_DATA": str(tmp_path)})
    assert r.returncode == 3
    report = json.loads(r.stderr)
    assert report["error"] == "integrity" and "details" in report


def test_chartab():
    doc = json.loads(run("chartab", "--type", "B2").stdout)
    assert len(doc["rows"]) == 5 and sorted(r["b"] for r in doc["rows"]) == [0, 1, 2, 2, 4]
    assert len(json.loads(run("chartab", "--type", "A1").stdout)["rows"]) == 2
    doc = json.loads(run("chartab", "--type", "A2").stdout)
    assert sorted(r["b"] for r in doc["rows"]) == [0, 1, 3]


def test_markdown_and_out(tmp_path):
    out = tmp_path / "r.md"
    assert run("compute", "--type", "G2", "--format", "markdown", "--out", str(out)).returncode == 0
    text = out.read_text()
    assert text.startswith("# Strata of G2") and "| phi2_1 | 10 |" in text
    r = run("chartab", "--type", "G2", "--format", "markdown")
    assert "| phi2_1 | 2 | 1 |" in r.stdout


def test_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run("compute", "--type", "B3", "--char", "3", "--out", str(a))
    run("compute", "--type", "B3", "--char", "3", "--out", str(b), env={"PYTHONHASHSEED": "7"})
    assert a.read_bytes() == b.read_bytes()
