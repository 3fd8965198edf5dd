import json

from asm_qdet.core.report import RunReport, SuiteReport, check, observe


def test_observational_failures_do_not_fail_a_suite():
    report = SuiteReport(
        suite="branches", checks=[observe("branch", False, n=1), check("branch", True, n=2)]
    )
    assert report.passed
    assert report.first_failure() is None


def test_run_report_orders_suites_and_checks():
    late = SuiteReport(
        suite="structural",
        checks=[check("structural", True, n=3, k=1), check("structural", True, n=1, k=-1)],
    )
    early = SuiteReport(suite="condensation", checks=[check("condensation", False, n=4, k=0)])
    report = RunReport.assemble("verify", [late, early])

    assert [s.suite for s in report.suites] == ["condensation", "structural"]
    assert [c.n for c in report.suites[1].checks] == [1, 3]
    assert not report.passed
    assert report.first_failure is not None
    assert report.first_failure.identity == "condensation"


def test_report_json_uses_pass_key():
    report = RunReport.assemble("verify", [SuiteReport(suite="x", checks=[check("a", True)])])
    payload = json.loads(report.dump_json())
    assert payload["suites"][0]["checks"][0]["pass"] is True
    assert payload["command"] == "verify"


def test_witness_only_kept_for_failures():
    assert check("a", True, witness="ignored").witness is None
    assert check("a", False, witness=3).witness == "3"
