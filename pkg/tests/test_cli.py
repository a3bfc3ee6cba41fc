import json

import pytest
from click.testing import CliRunner

from arith_rr.cli import main
from arith_rr.report import Report


@pytest.fixture
def run():
    runner = CliRunner()

    def _run(*args):
        return runner.invoke(main, list(args))

    return _run


def _json(result):
    return json.loads(result.output)


def test_verify_lemma23(run):
    res = run("verify", "lemma23", "--g-min", "2", "--g-max", "4", "--format", "json")
    assert res.exit_code == 0
    doc = _json(res)
    assert doc["overall_status"] == "pass"
    assert [r["residual"] for r in doc["results"]] == ["0", "0", "0"]
    assert [r["g"] for r in doc["results"]] == [2, 3, 4]


@pytest.mark.parametrize("name", ["r-integral", "theorem24", "prop31"])
def test_verify_over_g(run, name):
    res = run("verify", name, "--g-min", "2", "--g-max", "5")
    assert res.exit_code == 0
    assert res.output.strip().endswith("overall: pass")


def test_verify_section4(run):
    res = run("verify", "section4", "--format", "json")
    assert res.exit_code == 0
    assert len(_json(res)["results"]) == 4


def test_verify_g_formula(run):
    res = run("verify", "g-formula", "--format", "json")
    assert res.exit_code == 0
    rows = _json(res)["results"]
    assert len(rows) == 23
    row10 = next(r for r in rows if r["r_plus"] == 10)
    assert row10["closed_form_value"] == "0"


def test_constants_eval(run):
    res = run("constants", "eval", "--expr", "-4*zp(1)-1*log(2)", "--digits", "20", "--format", "json")
    assert res.exit_code == 0
    rec = _json(res)["results"][0]
    assert rec["expr"] == "-1*log(2) - 4*zp(1)"
    assert rec["value"].startswith("-0.0314626057581")


def test_constants_eval_rejects_garbage(run):
    res = run("constants", "eval", "--expr", "log(x)")
    assert res.exit_code == 2


@pytest.mark.parametrize("args", [
    ("verify", "lemma23", "--g-min", "1"),
    ("verify", "lemma23", "--g-min", "5", "--g-max", "3"),
    ("verify", "prop31", "--g-max", "13"),
    ("verify", "g-formula", "--r-max", "23"),
    ("theta", "invariance", "--g", "3"),
    ("constants", "eval", "--expr", "1", "--digits", "5"),
    ("nonsense",),
])
def test_bad_parameters(run, args):
    res = run(*args)
    assert res.exit_code == 2


def _omega_file(tmp_path, text):
    f = tmp_path / "omega.txt"
    f.write_text(text)
    return str(f)


def test_theta_eval(run, tmp_path):
    path = _omega_file(tmp_path, "1i\n")
    res = run("theta", "eval", "--file", path, "--char", "0,0", "--digits", "20", "--format", "json")
    assert res.exit_code == 0
    rec = _json(res)["results"][0]
    assert rec["parity"] == "even"
    assert rec["value"].startswith("1.0864348112133")


def test_theta_eval_bad_char(run, tmp_path):
    path = _omega_file(tmp_path, "1i\n")
    assert run("theta", "eval", "--file", path, "--char", "00,0").exit_code == 2


def test_chi_eval(run, tmp_path):
    path = _omega_file(tmp_path, "1i\n")
    res = run("chi", "eval", "--file", path, "--digits", "20", "--format", "json")
    assert res.exit_code == 0
    assert _json(res)["results"][0]["chi"].startswith("0.90676765516")


@pytest.mark.parametrize("text", ["1i 2i\n", "not a number\n", "0.1-1i\n", ""])
def test_malformed_omega_file(run, tmp_path, text):
    res = run("chi", "eval", "--file", _omega_file(tmp_path, text))
    assert res.exit_code != 0
    assert "period matrix" in res.output


def test_missing_omega_file(run, tmp_path):
    assert run("chi", "eval", "--file", str(tmp_path / "absent.txt")).exit_code == 2


def test_theta_invariance_deterministic(run):
    args = ("theta", "invariance", "--g", "1", "--trials", "3", "--digits", "20", "--seed", "9", "--format", "json")
    first, second = run(*args), run(*args)
    assert first.exit_code == 0
    assert first.output == second.output


def test_report_round_trip(run):
    res = run("report", "--format", "json", "--digits", "20", "--seed", "1")
    assert res.exit_code == 0
    report = Report.from_json(res.output)
    assert report.passed
    assert Report.from_json(report.to_json()) == report
    assert report.to_json() == res.output.strip()


def test_report_text(run):
    res = run("report", "--digits", "20")
    assert res.exit_code == 0
    assert "FAIL" not in res.output


def test_failing_report_sets_status():
    rep = Report("x", {}, [{"statement_id": "s", "g": 2, "pipeline_value": "1", "closed_form_value": "0",
                            "equal": False, "residual": "1"}])
    assert rep.overall_status == "fail"
    assert "FAIL s g=2" in rep.to_text()


def test_version(run):
    res = run("--version")
    assert res.exit_code == 0
    assert "0.1.0" in res.output
