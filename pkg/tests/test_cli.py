import json
from collections.abc import Callable
from typing import Any

import pytest

from asm_qdet import main as main_module
from asm_qdet.core.exceptions import ErrorCode, GuardExceeded
from asm_qdet.core.options import Suite
from asm_qdet.core.report import SuiteReport, check
from asm_qdet.main import RunConfig, parse_config

type Cli = Callable[..., Any]


def test_eval_symbolic(cli: Cli):
    result = cli("eval", "--n", "2", "--k", "1")
    assert result.exit_code == 0
    assert result.lines == ["x+2"]


def test_eval_at_a_root_of_unity(cli: Cli):
    result = cli("eval", "--n", "3", "--k", "1", "--x", "0", "--q", "zeta3")
    assert result.exit_code == 0
    assert result.lines == ["7"]


def test_eval_vanishing_determinant(cli: Cli):
    assert cli("eval", "--n", "3", "--k", "0").lines == ["0"]


def test_eval_rational_point(cli: Cli):
    assert cli("eval", "--n", "2", "--k", "2", "--x", "1", "--q", "2").lines == ["-3"]


def test_eval_laurent_text(cli: Cli):
    assert cli("eval", "--n", "2", "--k", "0").lines == ["q^-1*(-x-1)"]


def test_eval_json(cli: Cli):
    result = cli("eval", "--n", "2", "--k", "0", "--format", "json")
    payload = json.loads(result.stdout)
    assert payload["n"] == 2
    assert payload["text"] == "q^-1*(-x-1)"
    assert payload["value"] == {"-1": ["-1/1", "-1/1"]}


def test_eval_csv(cli: Cli):
    result = cli("eval", "--n", "2", "--k", "1", "--x", "3", "--format", "csv")
    assert result.lines == ["n,k,x,q,value", "2,1,3,symbolic,5"]


def test_eval_guard(cli: Cli):
    result = cli("eval", "--n", "9", "--k", "1")
    assert result.exit_code == 2
    assert result.stdout == ""
    assert result.error()["code"] == ErrorCode.GUARD_EXCEEDED
    GuardExceeded.schema().model_validate(result.error())


def test_eval_guard_override(cli: Cli):
    result = cli("eval", "--n", "13", "--k", "1", "--max-n", "13")
    assert result.exit_code == 2
    assert result.error()["code"] == ErrorCode.CONFIG_VALIDATION_ERROR


@pytest.mark.parametrize("q", ["zeta5", "0", "zetax", "1/0", "0/0"])
def test_eval_rejects_bad_q(cli: Cli, q: str):
    result = cli("eval", "--n", "2", "--q", q)
    assert result.exit_code == 2
    assert result.error()["error"] == "Invalid Run Configuration"


@pytest.mark.parametrize("x", ["1/0", "half", ""])
def test_eval_rejects_bad_x(cli: Cli, x: str):
    result = cli("eval", "--n", "2", "--x", x)
    assert result.exit_code == 2
    assert result.error()["code"] == ErrorCode.CONFIG_VALIDATION_ERROR


def test_eval_rejects_nonpositive_n(cli: Cli):
    assert cli("eval", "--n", "0").exit_code == 2


def test_missing_subcommand_is_a_usage_error(cli: Cli):
    with pytest.raises(SystemExit) as exc_info:
        cli()
    assert exc_info.value.code == 2


def test_table_csv(cli: Cli):
    result = cli("table", "--n", "4", "--format", "csv")
    assert result.exit_code == 0
    assert result.lines[0] == "n,A_n,A_n(2),A_n(3),A_n(4)"
    assert result.lines[-1] == "4,42,64,90,120"


def test_table_json(cli: Cli):
    rows = json.loads(cli("table", "--n", "3", "--format", "json").stdout)
    assert rows[-1] == {
        "n": 3,
        "asm": 7,
        "two_enumeration": 8,
        "three_enumeration": 9,
        "four_enumeration": 10,
    }


def test_table_plain_is_aligned(cli: Cli):
    lines = cli("table", "--n", "3").lines
    assert len(lines) == 4
    assert len({len(line) for line in lines}) == 1


def test_table_guard(cli: Cli):
    assert cli("table", "--n", "8").exit_code == 2


def test_table_max_n_lifts_the_guard(cli: Cli):
    result = cli("table", "--n", "8", "--max-n", "8", "--format", "csv")
    assert result.exit_code == 0
    assert len(result.lines) == 9
    assert result.lines[-1].startswith("8,10850216,268435456,")


def test_verify_passes(cli: Cli):
    result = cli("verify", "--suites", "main-theorem", "--max-n", "4")
    assert result.exit_code == 0
    assert result.lines[0].startswith("main-theorem: ok")


def test_verify_corollaries_past_the_oracle_guard(cli: Cli):
    result = cli("verify", "--suites", "corollaries", "--max-n", "8")
    assert result.exit_code == 0
    assert result.lines[0].startswith("corollaries: ok")


def test_verify_json_report(cli: Cli):
    result = cli("verify", "--suites", "deletion,condensation", "--max-n", "3", "--format", "json")
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["schema_version"] == 1
    assert report["passed"] is True
    assert report["first_failure"] is None
    assert [s["suite"] for s in report["suites"]] == ["condensation", "deletion"]
    assert all("pass" in c for s in report["suites"] for c in s["checks"])


def test_verify_is_deterministic(cli: Cli):
    argv = ("verify", "--suites", "transposition,divisibility", "--max-n", "3", "--format", "csv")
    assert cli(*argv).stdout == cli(*argv).stdout


def test_verify_reports_failures(cli: Cli, monkeypatch: pytest.MonkeyPatch):
    def failing(n_max: int) -> SuiteReport:
        return SuiteReport(
            suite="deletion", checks=[check("deletion:1/1", False, n=2, k=0, witness="boom")]
        )

    monkeypatch.setitem(main_module.SUITES, Suite.DELETION, failing)
    result = cli("verify", "--suites", "deletion")
    assert result.exit_code == 1
    assert result.lines[-1] == "first failure: deletion:1/1 n=2 k=0: boom"


def test_verify_rejects_unknown_suite(cli: Cli):
    assert cli("verify", "--suites", "nonsense").exit_code == 2


def test_verify_all_expands():
    cfg = parse_config(["verify", "--suites", "all"])
    assert cfg.suites == list(Suite)
    assert cfg.size == main_module.DEFAULT_VERIFY_N


def test_run_config_guard():
    assert RunConfig.model_validate({"command": "eval", "n": 3}).guard == 8
    assert RunConfig.model_validate({"command": "eval", "n": 3, "max_n": 10}).guard == 10


def test_oracle_plain(cli: Cli):
    result = cli("oracle", "--n", "3")
    assert result.exit_code == 0
    assert result.lines == ["A_3(Q) = 6+Q", "A_3 = 7"]


def test_oracle_json(cli: Cli):
    payload = json.loads(cli("oracle", "--n", "4", "--format", "json").stdout)
    assert payload == {"n": 4, "coeffs": [24, 16, 2], "total": 42}


def test_oracle_list(cli: Cli):
    result = cli("oracle", "--n", "3", "--list")
    assert result.exit_code == 0
    matrices = [json.loads(line) for line in result.lines]
    assert len(matrices) == 7
    assert [[0, 1, 0], [1, -1, 1], [0, 1, 0]] in matrices


def test_oracle_list_guard(cli: Cli):
    result = cli("oracle", "--n", "6", "--list")
    assert result.exit_code == 2
    assert result.error()["code"] == ErrorCode.GUARD_EXCEEDED
