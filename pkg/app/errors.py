"""Exception hierarchy shared by the library and the CLI.

Every error carries the process exit code the CLI reports for it:
1 for usage problems, 2 for invalid input or unmet hypotheses and 3 for
internal consistency failures.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class AvdcError(Exception):
    """Base class for all domain errors."""

    exit_code = 2


class UsageError(AvdcError):
    exit_code = 1


@dataclass(frozen=True, slots=True)
class Violation:
    """A single broken automaton rule, located by row (state) and column (letter)."""

    rule: str
    row: int | None
    column: int | None
    message: str

    def __str__(self) -> str:
        where = []
        if self.row is not None:
            where.append(f"row {self.row}")
        if self.column is not None:
            where.append(f"column {self.column}")
        location = f" ({', '.join(where)})" if where else ""
        return f"{self.rule}{location}: {self.message}"


class AutomatonError(AvdcError):
    """Raised when a transition table breaks the totally ordered conventions."""

    def __init__(self, violations: Sequence[Violation]) -> None:
        self.violations = tuple(violations)
        summary = "; ".join(str(item) for item in self.violations)
        super().__init__(f"invalid automaton: {summary}")


class AutomatonFormatError(AvdcError):
    def __init__(self, line: int, message: str) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}")


class WordError(AvdcError):
    """Malformed word, or a word that leaves the language."""


class FieldError(AvdcError):
    """Invalid number field construction or arithmetic (division by zero, mismatch)."""


class ReducibleCharpolyError(FieldError):
    pass


class PrimitivityError(AvdcError):
    pass


class HypothesisError(AvdcError):
    """A precondition of a construction (Pisot, minimal-letter rules) does not hold."""


class RankError(AvdcError):
    pass


class CapExceededError(AvdcError):
    pass


class ConsistencyError(AvdcError):
    """An exact self-check failed; indicates a bug rather than bad input."""

    exit_code = 3
