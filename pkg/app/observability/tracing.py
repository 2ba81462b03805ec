"""Context binding and timing spans for CLI commands."""
from __future__ import annotations

import contextlib
import time
from typing import Iterator

import structlog
from structlog.contextvars import bind_contextvars, clear_contextvars

logger = structlog.get_logger("app.trace")


def bind_command(*, command: str, automaton: str | None = None) -> None:
    bind_contextvars(command=command, automaton=automaton)
    logger.debug("trace_context", command=command, automaton=automaton)


def clear_context() -> None:
    clear_contextvars()


@contextlib.contextmanager
def span(name: str, **fields: object) -> Iterator[None]:
    start = time.perf_counter()
    try:
        yield
    finally:
        elapsed_ms = int((time.perf_counter() - start) * 1000)
        logger.info("trace_span", span=name, elapsed_ms=elapsed_ms, **fields)
