import uuid
from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar

import structlog

run_id_ctx: ContextVar[str | None] = ContextVar("run_id_ctx", default=None)


def new_run_id() -> str:
    return uuid.uuid4().hex[:12]


def bind_run(command: str, run_id: str | None = None) -> str:
    """Start a fresh logging context for one CLI invocation."""
    run_id = run_id or new_run_id()
    run_id_ctx.set(run_id)
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(run_id=run_id, command=command)
    return run_id


@contextmanager
def suite_context(suite: str) -> Iterator[None]:
    with structlog.contextvars.bound_contextvars(run_id=run_id_ctx.get(), suite=suite):
        yield
