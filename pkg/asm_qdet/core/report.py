from typing import Any

import structlog
from pydantic import BaseModel, ConfigDict, Field

from asm_qdet.core.config import settings

logger: structlog.stdlib.BoundLogger = structlog.get_logger()


class CheckResult(BaseModel):
    model_config = ConfigDict(populate_by_name=True, frozen=True)

    identity: str
    n: int | None = None
    k: int | None = None
    passed: bool = Field(alias="pass")
    observational: bool = False
    witness: str | None = None
    detail: Any = None

    @property
    def hard_failure(self) -> bool:
        return not self.passed and not self.observational

    def sort_key(self) -> tuple[str, int, int]:
        return (self.identity, self.n if self.n is not None else -1, self.k or 0)


def check(
    identity: str,
    passed: bool,
    *,
    n: int | None = None,
    k: int | None = None,
    witness: object = None,
    detail: Any = None,
    observational: bool = False,
) -> CheckResult:
    result = CheckResult(
        identity=identity,
        n=n,
        k=k,
        passed=passed,
        observational=observational,
        witness=None if passed or witness is None else str(witness),
        detail=detail,
    )
    if result.hard_failure:
        logger.error("Check failed", identity=identity, n=n, k=k, witness=result.witness)
    return result


def observe(identity: str, passed: bool, **kwargs: Any) -> CheckResult:
    return check(identity, passed, observational=True, **kwargs)


class SuiteReport(BaseModel):
    suite: str
    checks: list[CheckResult] = []
    published: dict[str, Any] = {}

    @property
    def passed(self) -> bool:
        return not any(c.hard_failure for c in self.checks)

    def first_failure(self) -> CheckResult | None:
        return next((c for c in self.checks if c.hard_failure), None)

    def failures(self, identity: str | None = None) -> list[CheckResult]:
        return [
            c
            for c in self.checks
            if c.hard_failure and (identity is None or c.identity == identity)
        ]

    def sorted(self) -> "SuiteReport":
        return self.model_copy(update={"checks": sorted(self.checks, key=CheckResult.sort_key)})


class RunReport(BaseModel):
    schema_version: int = Field(default_factory=lambda: settings.REPORT_SCHEMA_VERSION)
    command: str
    passed: bool = True
    first_failure: CheckResult | None = None
    suites: list[SuiteReport] = []

    @classmethod
    def assemble(cls, command: str, suites: list[SuiteReport]) -> "RunReport":
        ordered = sorted((s.sorted() for s in suites), key=lambda s: s.suite)
        first = next((f for s in ordered if (f := s.first_failure()) is not None), None)
        return cls(command=command, passed=first is None, first_failure=first, suites=ordered)

    def dump_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)
