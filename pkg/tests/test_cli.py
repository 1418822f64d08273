import json

import pytest

from zeropascal.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pascal_csv(capsys):
    code, out, _ = run(capsys, "pascal", "--c", "exp", "--order", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["1,0,0,0,0", "1,1,0,0,0", "1,2,1,0,0", "1,3,3,1,0", "1,4,6,4,1"]


def test_zero_pascal_json(capsys):
    code, out, _ = run(capsys, "zero-pascal", "--spec", "block:q=2,phi=0", "--order", "3", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"dim": 4, "rows": [["1"], ["1", "1"], ["1", "0", "1"], ["1", "1", "1", "1"]]}


def test_symbolic_phi_only_pretty(capsys):
    code, out, _ = run(capsys, "zero-pascal", "--spec", "block:q=2,phi=phi", "--order", "2")
    assert code == 0 and "phi" in out
    code, _, err = run(capsys, "zero-pascal", "--spec", "block:q=2,phi=phi", "--order", "2", "--format", "csv")
    assert code == 2 and "pretty" in err


def test_riordan(capsys):
    code, out, _ = run(capsys, "riordan", "--f", "geom", "--g", "1", "--order", "2", "--format", "csv")
    assert code == 0 and out.splitlines()[2] == "1,1,1"


def test_fractal_ops(capsys):
    code, out, _ = run(capsys, "fractal-series", "--q", "2", "--base", "1,1", "--order", "8", "--op", "log", "--format", "csv")
    assert code == 0 and out.strip() == "0,1,1,0,1,0,0,0,1"
    code, out, _ = run(capsys, "fractal", "--q", "2", "--base", "1,2", "--order", "4", "--op", "mul", "--format", "csv")
    assert out.strip() == "1,4,4,16,4"


def test_rgroup_ops(capsys):
    code, out, _ = run(capsys, "rgroup", "mul", "--b", "1,0,-1", "--a", "1,0,-1", "--order", "3", "--format", "csv")
    assert code == 0
    code, out, _ = run(capsys, "rgroup", "pseudo-check", "--b", "1,1", "--a", "1,1", "--order", "6")
    assert code == 0 and json.loads(out)["pass"] is True
    code, out, _ = run(capsys, "rgroup", "pseudo-check", "--b", "geom", "--a", "geom", "--order", "6")
    assert code == 1 and json.loads(out)["pass"] is False
    code, out, _ = run(capsys, "rgroup", "inv", "--b", "1,1", "--a", "2,1", "--order", "3", "--format", "json")
    assert code == 0 and json.loads(out)["dim"] == 4


def test_abel_report(capsys):
    code, out, _ = run(capsys, "rgroup", "abel", "--q", "2", "--nmax", "16", "--phi", "1", "--beta", "1", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["pass"] and {"identity", "n", "lhs", "rhs", "pass"} <= set(obj["entries"][0])


def test_verify_golden(capsys):
    code, out, _ = run(capsys, "verify", "golden-matrices", "--order", "15")
    assert code == 0 and "passed" in out


def test_usage_errors(capsys):
    assert main(["pascal", "--order", "-1"]) == 2
    assert main(["bogus"]) == 2
    assert main(["zero-pascal", "--spec", "wedge:q=2"]) == 2
    assert main(["verify", "no-such-suite"]) == 2
    capsys.readouterr()


def test_deterministic_output(capsys, tmp_path):
    argv = ["zero-pascal", "--spec", "block:q=3,phi=1/2 * cparam:exp", "--order", "6", "--format", "json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    out = tmp_path / "m.json"
    assert main(argv + ["--out", str(out)]) == 0
    assert out.read_text() == a


def test_verify_failure_reports_json(capsys, monkeypatch):
    from zeropascal import cli, suites

    bad = suites.SuiteReport("fake", (suites.Check("always fails", False, {"why": "test"}),))
    monkeypatch.setattr(cli, "run_suite", lambda *a, **k: bad)
    code, out, _ = run(capsys, "verify", "abel")
    assert code == 1
    assert json.loads(out)["checks"][0]["check"] == "always fails"
