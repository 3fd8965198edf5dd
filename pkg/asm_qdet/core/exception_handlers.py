import json
import sys
from collections.abc import Callable
from dataclasses import asdict
from functools import wraps

import structlog
from pydantic import ValidationError

from asm_qdet.core import exceptions as core_exceptions

log: structlog.stdlib.BoundLogger = structlog.get_logger()


def _emit(content: object) -> None:
    sys.stderr.write(json.dumps(content, default=str) + "\n")


def handle_errors(fn: Callable[..., int]) -> Callable[..., int]:
    """Turn package errors into an error JSON on stderr and the matching exit code."""

    @wraps(fn)
    def wrapper(*args: object, **kwargs: object) -> int:
        try:
            return fn(*args, **kwargs)
        except ValidationError as exc:
            log.error(str(exc))
            content = asdict(core_exceptions.ConfigValidationError())
            content["detail"] = json.loads(exc.json(include_url=False))
            _emit(content)
            return core_exceptions.EXIT_USAGE
        except core_exceptions.AsmQdetError as exc:
            content: core_exceptions.JSONAsmQdetError = exc.to_json_error_dict()
            log.error(content)
            _emit(content)
            return exc.exit_code

    return wrapper


__all__ = ("handle_errors",)
