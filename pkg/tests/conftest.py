import json
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import pytest

from asm_qdet.main import main


@dataclass
class CliResult:
    exit_code: int
    stdout: str
    stderr: str

    @property
    def lines(self) -> list[str]:
        return self.stdout.splitlines()

    def error(self) -> dict[str, Any]:
        """The error JSON is always the last line written to stderr."""
        return json.loads(self.stderr.strip().splitlines()[-1])


@pytest.fixture
def cli(capsys: pytest.CaptureFixture[str]) -> Callable[..., CliResult]:
    def run(*argv: str) -> CliResult:
        capsys.readouterr()
        exit_code = main(list(argv))
        captured = capsys.readouterr()
        return CliResult(exit_code, captured.out, captured.err)

    return run
