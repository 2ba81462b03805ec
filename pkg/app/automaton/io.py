"""Strict reader and canonical writer for the automaton text format.

    # comment
    d 3
    sigma 3
    2 0 1
    3 0 1
    3 2 1

Row q lists the targets of state q for every letter; the last row is the
initial state d and the sink row is implicit. A line whose first
non-blank character is ``#`` is a comment; trailing comments after data
are rejected like any other stray token.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterator, List, Tuple

from app.automaton.ordered import OrderedAutomaton
from app.automaton.words import is_decimal
from app.errors import AutomatonFormatError


def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _header(lines: Iterator[Tuple[int, str]], keyword: str, last_line: int) -> Tuple[int, int]:
    try:
        number, line = next(lines)
    except StopIteration:
        raise AutomatonFormatError(last_line + 1, f"missing '{keyword} <int>' header") from None
    parts = line.split()
    if len(parts) != 2 or parts[0] != keyword or not is_decimal(parts[1]) or int(parts[1]) < 1:
        raise AutomatonFormatError(number, f"expected '{keyword} <positive int>', got {line!r}")
    return number, int(parts[1])


def parse_automaton(text: str) -> OrderedAutomaton:
    lines = _content_lines(text)
    number, d = _header(lines, "d", 0)
    number, sigma = _header(lines, "sigma", number)
    rows: List[Tuple[int, ...]] = []
    for state in range(1, d + 1):
        try:
            number, line = next(lines)
        except StopIteration:
            raise AutomatonFormatError(number + 1, f"missing row for state {state}") from None
        tokens = line.split()
        if len(tokens) != sigma:
            raise AutomatonFormatError(number, f"state {state}: expected {sigma} entries, got {len(tokens)}")
        if not all(is_decimal(token) for token in tokens):
            raise AutomatonFormatError(number, f"state {state}: entries must be nonnegative integers")
        rows.append(tuple(int(token) for token in tokens))
    for extra_number, extra in lines:
        raise AutomatonFormatError(extra_number, f"trailing content {extra!r}")
    return OrderedAutomaton.from_rows(rows)


def load_automaton(path: Path) -> OrderedAutomaton:
    return parse_automaton(path.read_text(encoding="utf-8"))


def dump_automaton(aut: OrderedAutomaton) -> str:
    lines = [f"d {aut.d}", f"sigma {aut.sigma}"]
    lines.extend(" ".join(str(target) for target in row) for row in aut.rows())
    return "\n".join(lines) + "\n"
