import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from dlcovers import cli

SCHEMA = json.loads(resources.files("dlcovers").joinpath("report.schema.json").read_text())


def run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr().out
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_count_report(capsys):
    code, rep = run(capsys, "count", "--family", "suzuki-tilde", "--q", "8", "--ext", "4", "--degrees")
    assert code == 0
    assert rep["result"]["N"] == 29185 and rep["result"]["maximal"] is True
    assert rep["spec"]["family"] == "cyclic-cover(suzuki,5)"
    assert rep["moduli"]["p"] == 2 and rep["wall_time"] is None


def test_maximal_nonmaximal_is_still_success(capsys):
    code, rep = run(capsys, "maximal", "--family", "kummer-line(9)", "--q", "4")
    assert code == 0 and rep["result"]["maximal"] is False and rep["result"]["deficiency"] == 144


def test_genus_flags_discrepancy(capsys):
    code, rep = run(capsys, "genus", "--family", "ree-tilde", "--q", "27")
    assert rep["result"]["genus"] == 246051
    assert any("genus-discrepancy" in f for f in rep["audit_flags"])
    code, rep = run(capsys, "genus", "--family", "suzuki-tilde", "--q", "8")
    assert rep["audit_flags"] == []


@pytest.mark.parametrize("argv,key,value", [
    (["degrees", "--family", "hermitian", "--q", "4", "--ext", "3"], "matches_prediction", True),
    (["orbits", "--family", "suzuki", "--q", "8", "--verify"], "measured_tame", 1456),
    (["ramification", "--family", "ree", "--q", "27"], "d_inf", 538693),
    (["semigroup", "--family", "suzuki-tilde", "--q", "8"], "genus", 196),
    (["semigroup", "--generators", "3,4,5"], "frobenius", 2),
    (["rcf-check", "--family", "hermitian", "--q", "9"], "verdict", "equal"),
    (["kummer-scan", "--q", "4", "--m", "3"], "extension", 3),
    (["tracezero", "--q", "9"], "ok", True),
    (["audit-split", "--family", "suzuki-tilde", "--q", "8"], "violations", 0),
    (["verify-identities", "--family", "suzuki", "--q", "8"], "all_passed", True),
])
def test_subcommands(capsys, argv, key, value):
    code, rep = run(capsys, *argv)
    assert code == 0
    assert rep["result"][key] == value


def test_verify_identities_numeric_and_perturb(capsys):
    code, rep = run(capsys, "verify-identities", "--family", "suzuki", "--q", "8", "--numeric-ext", "4",
                    "--perturb", "z-relation")
    res = rep["result"]
    assert res["all_passed"] is False
    assert res["numeric"]["results"]["hermitian-embedding"] == {"violations": 0, "points": 29184}
    assert res["numeric"]["results"]["z-relation"]["violations"] == 5888


@pytest.mark.parametrize("argv,code,etype", [
    (["count", "--family", "hermitian", "--q", "8"], 2, "PreconditionError"),
    (["semigroup", "--generators", "4,6"], 2, "DomainError"),
    (["count", "--q", "8"], 2, "UsageError"),
    (["count", "--family", "suzuki", "--q", "32", "--ext", "7"], 3, "guard-rail"),
    (["maximal", "--family", "suzuki", "--q", "8", "--ext", "3"], 2, "PreconditionError"),
])
def test_exit_codes(capsys, argv, code, etype):
    got, rep = run(capsys, *argv)
    assert got == code
    assert rep["error"]["type"] == etype


def test_timing_flag(capsys):
    _, rep = run(capsys, "count", "--family", "suzuki", "--q", "8", "--timing")
    assert isinstance(rep["wall_time"], float)


def test_human_output(capsys):
    assert cli.run(["genus", "--family", "suzuki", "--q", "8", "--human"]) == 0
    assert "genus: 14" in capsys.readouterr().out


def test_reruns_are_byte_identical(tmp_path):
    argv = [sys.executable, "-m", "dlcovers.cli", "count", "--family", "gk", "--q", "4", "--ext", "6",
            "--out", str(tmp_path / "a.json")]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv[:-1] + [str(tmp_path / "b.json")], capture_output=True, check=True).stdout
    assert a == b
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    w = subprocess.run(argv[:-2] + ["--workers", "3"], capture_output=True, check=True).stdout
    ja, jw = json.loads(a), json.loads(w)
    assert ja["result"] == jw["result"]


def test_repro_subset(capsys):
    code = cli.run(["repro", "--items", "1,2"])
    captured = capsys.readouterr()
    rep = json.loads(captured.out)
    jsonschema.validate(rep, SCHEMA)
    assert code == 0 and rep["result"]["all_passed"] is True
    assert "[PASS] item 1" in captured.err
