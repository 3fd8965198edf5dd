import argparse
import csv
import json
import sys
from collections.abc import Callable, Sequence
from typing import Any, Self

import structlog
from pydantic import BaseModel, field_validator, model_validator

from asm_qdet import closedform, detkernel, oracle, structure
from asm_qdet.core.config import settings
from asm_qdet.core.context import bind_run, suite_context
from asm_qdet.core.exception_handlers import handle_errors
from asm_qdet.core.exceptions import EXIT_FAILURE, EXIT_OK, GuardExceeded
from asm_qdet.core.logging import configure as configure_logging
from asm_qdet.core.options import ALL_SUITES, Command, OutputFormat, Suite
from asm_qdet.core.report import RunReport, SuiteReport
from asm_qdet.exactalg import SUPPORTED_ORDERS, CycloElem, XPoly
from asm_qdet.exactalg.serialize import RingValue, parse_rational, to_json, to_text

logger: structlog.stdlib.BoundLogger = structlog.get_logger()

SYMBOLIC = "symbolic"
DEFAULT_VERIFY_N = 5
DEFAULT_TABLE_N = 5


class RunConfig(BaseModel):
    command: Command
    n: int | None = None
    k: int = 1
    x: str = SYMBOLIC
    q: str = SYMBOLIC
    suites: list[Suite] = []
    format: OutputFormat = OutputFormat.PLAIN
    max_n: int | None = None
    list_asms: bool = False

    @field_validator("x")
    @classmethod
    def _check_x(cls, value: str) -> str:
        if value != SYMBOLIC:
            parse_rational(value)
        return value

    @field_validator("q")
    @classmethod
    def _check_q(cls, value: str) -> str:
        if value == SYMBOLIC:
            return value
        if value.startswith("zeta"):
            order = int(value.removeprefix("zeta"))
            if order not in SUPPORTED_ORDERS:
                raise ValueError(f"order {order} is not one of {SUPPORTED_ORDERS}")
            return value
        if parse_rational(value) == 0:
            raise ValueError("q must be nonzero")
        return value

    @model_validator(mode="after")
    def _check_command(self) -> Self:
        if self.command in (Command.EVAL, Command.ORACLE) and self.n is None:
            raise ValueError(f"{self.command} needs --n")
        if self.n is not None and self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if self.command == Command.VERIFY and not self.suites:
            raise ValueError("verify needs at least one suite")
        if self.max_n is not None and self.max_n > settings.DET_HARD_MAX_N:
            raise ValueError(f"--max-n may not exceed {settings.DET_HARD_MAX_N}")
        return self

    @property
    def guard(self) -> int:
        return self.max_n if self.max_n is not None else settings.MAX_SYMBOLIC_N

    @property
    def size(self) -> int:
        if self.max_n is not None:
            return self.max_n
        return DEFAULT_VERIFY_N


def _split_suites(text: str | None) -> list[str]:
    if not text:
        return []
    names = [s.strip() for s in text.split(",") if s.strip()]
    return [s.value for s in Suite] if ALL_SUITES in names else names


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asm-qdet",
        description="Exact evaluation of d_{n,k}(x, q) and the weighted enumeration of ASMs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", default=OutputFormat.PLAIN.value, help="plain, json or csv")
        p.add_argument("--max-n", type=int, default=None, help="size guard override")

    ev = sub.add_parser(Command.EVAL.value, help="evaluate d_{n,k}(x, q)")
    ev.add_argument("--n", type=int, required=True)
    ev.add_argument("--k", type=int, default=1)
    ev.add_argument("--x", default=SYMBOLIC, help='a rational such as "1/2", or "symbolic"')
    ev.add_argument(
        "--q", default=SYMBOLIC, help='"symbolic", "zeta1" .. "zeta6" or a nonzero rational'
    )
    common(ev)

    table = sub.add_parser(Command.TABLE.value, help="A_n, A_n(2), A_n(3), A_n(4)")
    table.add_argument("--n", type=int, default=DEFAULT_TABLE_N, help="largest size")
    common(table)

    verify = sub.add_parser(Command.VERIFY.value, help="run verification suites")
    verify.add_argument(
        "--suites", required=True, help=f"comma separated; '{ALL_SUITES}' selects every suite"
    )
    common(verify)

    orc = sub.add_parser(Command.ORACLE.value, help="brute-force Q-enumeration of ASMs")
    orc.add_argument("--n", type=int, required=True)
    orc.add_argument("--list", dest="list_asms", action="store_true", help="print every ASM")
    common(orc)
    return parser


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    args = vars(create_parser().parse_args(argv))
    args["suites"] = _split_suites(args.get("suites"))
    return RunConfig.model_validate({k: v for k, v in args.items() if v is not None})


def _write(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _simplify(value: RingValue) -> RingValue:
    if isinstance(value, CycloElem) and value.is_constant():
        value = value.rational_part()
    if isinstance(value, XPoly) and value.is_constant():
        return value.constant()
    return value


def evaluate(cfg: RunConfig) -> RingValue:
    assert cfg.n is not None
    if cfg.n > cfg.guard:
        raise GuardExceeded(what="symbolic determinant", n=cfg.n, limit=cfg.guard)
    value = detkernel.d(cfg.n, cfg.k)
    if cfg.x != SYMBOLIC:
        value = value.eval_x(parse_rational(cfg.x))
    if cfg.q == SYMBOLIC:
        return value
    if cfg.q.startswith("zeta"):
        return _simplify(value.substitute_root(int(cfg.q.removeprefix("zeta"))))
    return _simplify(value.eval_q(parse_rational(cfg.q)))


def cmd_eval(cfg: RunConfig) -> int:
    value = evaluate(cfg)
    match cfg.format:
        case OutputFormat.JSON:
            payload: dict[str, Any] = {"n": cfg.n, "k": cfg.k, "x": cfg.x, "q": cfg.q}
            _write(json.dumps(payload | {"text": to_text(value), "value": to_json(value)}))
        case OutputFormat.CSV:
            writer = csv.writer(sys.stdout, lineterminator="\n")
            writer.writerows([("n", "k", "x", "q", "value"), (cfg.n, cfg.k, cfg.x, cfg.q, value)])
        case _:
            _write(to_text(value))
    return EXIT_OK


def cmd_table(cfg: RunConfig) -> int:
    n_max = cfg.n or DEFAULT_TABLE_N
    limit = cfg.max_n if cfg.max_n is not None else settings.MAX_ORACLE_N
    if n_max > limit:
        raise GuardExceeded(what="enumeration table", n=n_max, limit=limit)
    rows = closedform.enumeration_table(n_max, limit)
    match cfg.format:
        case OutputFormat.JSON:
            _write(json.dumps([row.model_dump() for row in rows], indent=2))
        case OutputFormat.CSV:
            writer = csv.writer(sys.stdout, lineterminator="\n")
            writer.writerow(closedform.TABLE_HEADER)
            writer.writerows(row.as_list() for row in rows)
        case _:
            cells = [list(closedform.TABLE_HEADER), *([str(v) for v in r.as_list()] for r in rows)]
            widths = [max(len(row[i]) for row in cells) for i in range(len(cells[0]))]
            for row in cells:
                _write("  ".join(c.rjust(w) for c, w in zip(row, widths, strict=True)))
    return EXIT_OK


def _merged(name: str, *reports: SuiteReport) -> SuiteReport:
    return SuiteReport(
        suite=name,
        checks=[c for r in reports for c in r.checks],
        published={k: v for r in reports for k, v in r.published.items()},
    )


SUITES: dict[Suite, Callable[[int], SuiteReport]] = {
    Suite.DELETION: detkernel.deletion_suite,
    Suite.CONDENSATION: detkernel.condensation_suite,
    Suite.TRANSPOSITION: detkernel.transposition_suite,
    Suite.DIVISIBILITY: detkernel.divisibility_suite,
    Suite.ENGINES: detkernel.engines_suite,
    Suite.DESNANOT_JACOBI: detkernel.desnanot_jacobi_suite,
    Suite.STRUCTURAL: lambda n: _merged(
        Suite.STRUCTURAL.value, structure.structural_suite(n), structure.integrality_observation(n)
    ),
    Suite.RECURSIONS: structure.f_recursion_suite,
    Suite.LEADING_COEFF: structure.leading_coeff_check,
    Suite.F_EXTRACT: lambda n: _merged(
        Suite.F_EXTRACT.value,
        structure.f_extract_suite(n),
        structure.k2_exploration(max(1, n // 2)),
    ),
    Suite.Q_PRODUCT: lambda n: structure.q_product_corollary(
        max(1, (min(n, settings.MAX_ORACLE_N) - 1) // 2)
    ),
    Suite.MAXIMALITY: structure.maximality_suite,
    Suite.CLOSEDFORMS: closedform.root_theorem_suite,
    Suite.BRANCHES: closedform.branch_search,
    Suite.COROLLARIES: closedform.enumeration_corollaries,
    Suite.MAIN_THEOREM: oracle.main_theorem_suite,
    Suite.CONNECTION: oracle.connection_check,
    Suite.APPENDIX: oracle.appendix_suite,
}


def run_suites(suites: Sequence[Suite], n_max: int) -> RunReport:
    reports: list[SuiteReport] = []
    for suite in dict.fromkeys(suites):
        with suite_context(suite):
            logger.info("Suite started", n_max=n_max)
            report = SUITES[suite](n_max)
            logger.info("Suite finished", checks=len(report.checks), passed=report.passed)
        reports.append(report)
    return RunReport.assemble(Command.VERIFY, reports)


def _plain_report(report: RunReport) -> None:
    for suite in report.suites:
        failed = len(suite.failures())
        observed = sum(1 for c in suite.checks if c.observational)
        status = "ok" if suite.passed else "FAILED"
        _write(
            f"{suite.suite}: {status} ({len(suite.checks)} checks, {failed} failed, "
            f"{observed} observational)"
        )
    if report.first_failure is not None:
        f = report.first_failure
        _write(f"first failure: {f.identity} n={f.n} k={f.k}: {f.witness}")


def cmd_verify(cfg: RunConfig) -> int:
    report = run_suites(cfg.suites, cfg.size)
    match cfg.format:
        case OutputFormat.JSON:
            _write(report.dump_json())
        case OutputFormat.CSV:
            writer = csv.writer(sys.stdout, lineterminator="\n")
            writer.writerow(("suite", "identity", "n", "k", "pass", "observational", "witness"))
            for suite in report.suites:
                for c in suite.checks:
                    writer.writerow(
                        (suite.suite, c.identity, c.n, c.k, c.passed, c.observational, c.witness)
                    )
        case _:
            _plain_report(report)
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_oracle(cfg: RunConfig) -> int:
    assert cfg.n is not None
    enumeration = oracle.q_enum(cfg.n, cfg.max_n)
    if cfg.list_asms:
        if cfg.n > oracle.LIST_MAX_N:
            raise GuardExceeded(what="ASM listing", n=cfg.n, limit=oracle.LIST_MAX_N)
        for a in oracle.iter_asms(cfg.n):
            _write(json.dumps(a.to_json()))
        return EXIT_OK
    match cfg.format:
        case OutputFormat.JSON:
            payload: dict[str, Any] = {
                "n": cfg.n,
                "coeffs": enumeration.to_json(),
                "total": enumeration.total,
            }
            _write(json.dumps(payload))
        case OutputFormat.CSV:
            writer = csv.writer(sys.stdout, lineterminator="\n")
            writer.writerow(("minus_ones", "count"))
            writer.writerows(enumerate(enumeration.coeffs))
        case _:
            _write(f"A_{cfg.n}(Q) = {enumeration}")
            _write(f"A_{cfg.n} = {enumeration.total}")
    return EXIT_OK


COMMANDS: dict[Command, Callable[[RunConfig], int]] = {
    Command.EVAL: cmd_eval,
    Command.TABLE: cmd_table,
    Command.VERIFY: cmd_verify,
    Command.ORACLE: cmd_oracle,
}


@handle_errors
def main(argv: Sequence[str] | None = None) -> int:
    configure_logging(settings.ENABLED_LOGGERS)
    cfg = parse_config(argv)
    bind_run(cfg.command)
    logger.debug(f"{settings=!r}")
    logger.info("Command started", config=cfg.model_dump(mode="json"))
    return COMMANDS[cfg.command](cfg)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
