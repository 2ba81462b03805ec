"""Lightweight in-process counters exported as JSON."""
from __future__ import annotations

import contextlib
import time
from collections import defaultdict
from pathlib import Path
from typing import Dict, Iterator

import orjson
import structlog

logger = structlog.get_logger(__name__)

DEFAULT_COUNTERS = (
    "points_generated",
    "comparisons",
    "rows_written",
    "brs_states",
    "checkpoints_saved",
    "duration_ms",
)


class MetricsRegistry:
    """Holds mutable counters for the current process."""

    def __init__(self) -> None:
        self._counters: Dict[str, int] = defaultdict(int)
        for key in DEFAULT_COUNTERS:
            self._counters[key] = 0

    def incr(self, name: str, value: int = 1) -> None:
        self._counters[name] += value

    def get(self, name: str) -> int:
        return self._counters.get(name, 0)

    def snapshot(self) -> Dict[str, int]:
        return dict(self._counters)

    def export(self, *, path: Path, command: str) -> Path:
        """Write counters to ``path`` together with the command name and a UTC timestamp."""
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {
            "command": command,
            "counters": self.snapshot(),
            "generated_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        }
        path.write_bytes(orjson.dumps(payload, option=orjson.OPT_INDENT_2))
        return path


@contextlib.contextmanager
def record_duration(registry: MetricsRegistry, metric_name: str = "duration_ms") -> Iterator[None]:
    start = time.perf_counter()
    try:
        yield
    finally:
        elapsed = int((time.perf_counter() - start) * 1000)
        registry.incr(metric_name, elapsed)
        logger.info("timer_stop", metric=metric_name, duration_ms=elapsed)
