import json

import pytest

from siegelmaass import mutations
from siegelmaass.errors import InvalidPlan
from siegelmaass.verify import Record, ResidualReport, SuitePlan, SuiteReport, cli_main, emit_report, run_suite
from siegelmaass.verify.report import IoFailure


def _record(residual, tol=1e-6, sense="<="):
    return Record("c", "a = b", 2, {"alpha": 2.0}, "Z", residual, tol, sense)


def _strip_times(d):
    for s in d["suites"]:
        s.pop("wall_time")
    return d


def test_empty_report_passes():
    d = ResidualReport(7).to_dict()
    assert d == {"version": d["version"], "seed": 7, "suites": [], "pass": True}


def test_single_failure_fails_aggregate():
    rep = ResidualReport(1, [SuiteReport("operators", [_record(1e-9), _record(1e-3)])])
    assert not rep.passed
    assert rep.to_dict()["pass"] is False
    assert [r["pass"] for r in rep.to_dict()["suites"][0]["records"]] == [True, False]


def test_sanity_records_pass_above_threshold():
    assert _record(0.5, 1e-3, ">=").passed
    assert not _record(1e-6, 1e-3, ">=").passed
    assert not _record(float("nan")).passed


def test_json_round_trip_is_byte_identical():
    rep = ResidualReport(3, [SuiteReport("eigenvalue", [
        Record("eigenvalue_omega", "x", 2, {"k": 10}, "Z", 1.2345678901234567e-9, 1e-3, expected=35.0,
               value=35.000000001), _record(2e-7)], 0.25)])
    text = rep.to_json()
    again = json.dumps(json.loads(text), sort_keys=True, indent=2)
    assert again == text
    assert ResidualReport.from_json(text).to_json() == text


def test_emit_report_formats(tmp_path):
    rep = ResidualReport(3, [SuiteReport("forms", [_record(1e-9)])])
    emit_report(rep, "json", tmp_path / "r.json")
    assert json.loads((tmp_path / "r.json").read_text())["pass"] is True
    emit_report(rep, "markdown", tmp_path / "r.md")
    md = (tmp_path / "r.md").read_text()
    assert "## forms: PASS" in md and "| check |" in md
    with pytest.raises(IoFailure):
        emit_report(rep, "json", tmp_path / "missing" / "r.json")


@pytest.mark.parametrize("kwargs", [
    {"suite": "bogus"},
    {"suite": "forms", "samples": 0},
    {"suite": "eigenvalue", "degrees": (3,)},
    {"suite": "symplectic", "seed": -1},
    {"suite": "operators", "degrees": ()},
])
def test_invalid_plans(kwargs):
    with pytest.raises(InvalidPlan):
        SuitePlan(**kwargs)


def test_suite_is_deterministic():
    plan = SuitePlan("operators", degrees=(1, 2), samples=2, seed=11)
    a = ResidualReport(11, [run_suite(plan)]).to_dict()
    b = ResidualReport(11, [run_suite(plan)]).to_dict()
    c = ResidualReport(11, [run_suite(SuitePlan("operators", (1, 2), 2, 11, jobs=3))]).to_dict()
    assert _strip_times(a) == _strip_times(b) == _strip_times(c)
    other = ResidualReport(12, [run_suite(SuitePlan("operators", (1, 2), 2, 12))]).to_dict()
    assert _strip_times(other)["suites"] != a["suites"]


def test_eigenvalue_suite_confirms_scaled_constant():
    plan = SuitePlan("eigenvalue", degrees=(2,), samples=1, seed=0)
    good = run_suite(plan)
    assert good.passed
    with mutations.inject(mutations.UNSCALED_BORDERLINE):
        bad = run_suite(plan)
    ratios = [r for r in bad.records if r.check == "eigenvalue_omega"]
    # (n-1) beta (alpha - (n+1)/2) at n = 2, k = 10
    assert ratios[0].residual == pytest.approx(17.5, rel=1e-6)
    assert not bad.passed


def test_cli_rejects_bogus_suite(capsys):
    assert cli_main(["--suite", "bogus"]) == 2
    assert cli_main(["--suite", "forms", "--degree", "x"]) == 2
    assert cli_main(["--format", "yaml"]) == 2


def test_cli_eigenvalue_report(tmp_path):
    out = tmp_path / "eig.json"
    assert cli_main(["--suite", "eigenvalue", "--degree", "2", "--samples", "5", "--report", str(out)]) == 0
    recs = json.loads(out.read_text())["suites"][0]["records"]
    assert {r["expected"] for r in recs if r["check"].startswith("eigenvalue")} == {35.0}
    md = tmp_path / "eig.md"
    cli_main(["--suite", "eigenvalue", "--degree", "2", "--samples", "1", "--report", str(md), "--format",
              "markdown"])
    assert "| 35 |" in md.read_text()


def test_cli_failure_and_io_exit_codes(tmp_path):
    assert cli_main(["--suite", "operators", "--degree", "1", "--samples", "1", "--tol-fd1", "1e-15"]) == 1
    assert cli_main(["--suite", "forms", "--degree", "1", "--samples", "1",
                     "--report", str(tmp_path / "no" / "such" / "dir.json")]) == 2


def test_cli_all_filters_degrees():
    # degree 3 is only supported by some suites; 'all' runs those and skips the rest
    assert cli_main(["--suite", "all", "--degree", "3", "--samples", "1"]) == 0
    assert cli_main(["--suite", "eigenvalue", "--degree", "3"]) == 2
