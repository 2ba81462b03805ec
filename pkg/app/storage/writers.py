"""CSV and JSON writers for sequences, sweeps and reports."""
from __future__ import annotations

import csv
from pathlib import Path
from typing import Any, Iterable, Mapping, TextIO

import orjson

SEQUENCE_HEADER = ("n", "word", "value")
SWEEP_HEADER = ("N", "count", "D")


class CsvStream:
    """Thin wrapper over ``csv.writer`` that writes the header once and flushes on demand."""

    def __init__(self, handle: TextIO, header: Iterable[str], *, write_header: bool = True) -> None:
        self._handle = handle
        self._writer = csv.writer(handle, lineterminator="\n")
        if write_header:
            self._writer.writerow(list(header))

    def write(self, row: Iterable[object]) -> None:
        self._writer.writerow(list(row))

    def flush(self) -> None:
        self._handle.flush()


def truncate_sweep_csv(path: Path, keep_through: int) -> int:
    """Rewrite a sweep CSV keeping the header and the rows with N <= ``keep_through``.

    Returns the number of data rows kept. Rows that do not start with an
    integer N are dropped.
    """
    with path.open("r", encoding="utf-8", newline="") as handle:
        rows = list(csv.reader(handle))
    kept = [
        row for row in rows[1:] if row and row[0].isascii() and row[0].isdigit() and int(row[0]) <= keep_through
    ]
    with path.open("w", encoding="utf-8", newline="") as handle:
        stream = CsvStream(handle, SWEEP_HEADER)
        for row in kept:
            stream.write(row)
    return len(kept)


def write_json_report(path: Path, payload: Mapping[str, Any]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(orjson.dumps(payload, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS))
    return path
