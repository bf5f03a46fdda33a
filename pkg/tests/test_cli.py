import json
import shutil
import subprocess
import sys

import pytest

from k3audit import coverbook
from k3audit.cli import parse_config, run
from k3audit.matgroup import data_dir


def test_verify_single_case(capsys):
    assert run(["verify", "--case", "11b"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("AUDIT 11b PASS\n")
    assert "CHECK section-space case11b.sections PASS" in out


def test_unknown_case_is_usage_error(capsys):
    assert run(["verify", "--case", "nosuch"]) == 2
    err = capsys.readouterr().err
    assert "invalid choice" in err and "11a" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["audit"],
        ["verify", "--case", "10", "--primes", "7,9"],
        ["verify", "--case", "10", "--jobs", "0"],
        ["verify", "--case", "10", "--n-bound", "12"],
        ["delpezzo", "--degree", "5", "--quadric"],
        ["molien", "--group", "l27", "--degree", "-1"],
        ["molien", "--group", "q8_2d", "--degree", "4", "--character", "9"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == 0
    assert "verify" in capsys.readouterr().out


def test_config_parsing():
    cfg = parse_config(["verify", "--case", "10", "--case", "10", "--case", "2", "--primes", "11,13", "-j", "2"])
    assert cfg.cases == ["10", "2"] and cfg.primes == (11, 13) and cfg.jobs == 2
    assert parse_config(["audit", "--group", "all"]).groups == ["M20", "F384", "A44", "T192", "H192"]


def test_audit_json(capsys):
    assert run(["audit", "--group", "F384", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    (rep,) = doc["reports"]
    assert rep["case"] == "F384" and rep["verdict"] == "pass"
    assert any(c["anchor"] == "F384.branch-divisibility" for c in rep["checks"])


def test_output_file_and_parallel_determinism(tmp_path):
    a, b = tmp_path / "serial.txt", tmp_path / "parallel.txt"
    argv = ["audit", "--group", "all"]
    assert run(argv + ["-o", str(a)]) == 0
    assert run(argv + ["-o", str(b), "--jobs", "3"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().count("AUDIT ") == 5


def test_n_bound_is_restored():
    assert run(["audit", "--group", "M20", "--n-bound", "19", "-o", "/dev/null"]) == 0
    assert coverbook.n_bound() == coverbook.N_BOUND_STRICT


def test_molien(capsys):
    assert run(["molien", "--group", "l27", "--degree", "6", "--expect", "1", "--character", "0"]) == 0
    assert "dimension 1" in capsys.readouterr().out
    assert run(["molien", "--group", "l27", "--degree", "6", "--expect", "2", "--character", "0"]) == 1
    assert "FAILED molien" in capsys.readouterr().err
    assert run(["molien", "--group", "q8_2d", "--degree", "4", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["dimensions"]) == 4 and doc["order"] == 8


def test_delpezzo_graph(capsys):
    assert run(["delpezzo", "--degree", "5", "--emit-graph", "dot"]) == 0
    out = capsys.readouterr().out
    assert "classes 10" in out and "girth 5 automorphisms 120" in out
    assert out.count(" -- ") == 15
    assert run(["delpezzo", "--degree", "8", "--quadric", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["classes"] == []


def test_derive_pipelines(capsys):
    assert run(["derive", "--pipeline", "cs5"]) == 0
    out = capsys.readouterr().out
    assert "a3..a7:" in out and "matches_table: True" in out
    assert run(["derive", "--pipeline", "m9", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["irreducible"] == 3 and doc["total_dimension"] == 4


def test_failing_check_reports_anchor(tmp_path, monkeypatch, capsys):
    shutil.copytree(data_dir(), tmp_path / "data")
    path = tmp_path / "data" / "case3b_sextic.poly"
    path.write_text(path.read_text() + "5 ; 2 2 2\n")
    monkeypatch.setenv("K3AUDIT_DATA", str(tmp_path / "data"))
    assert run(["verify", "--case", "3b"]) == 1
    cap = capsys.readouterr()
    assert cap.out.startswith("AUDIT 3b FAIL")
    assert "FAILED 3b case3b." in cap.err


def test_selftest_small(capsys):
    assert run(["selftest", "--instances", "20"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 10
    assert lines[2].split()[:3] == ["criterion", "3", "FAIL"]
    assert "known deviation" in lines[2]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "k3audit", "delpezzo", "--degree", "7"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("degree 7 rank 3 classes 3")
