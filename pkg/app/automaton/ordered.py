"""Totally ordered automata on the states {0, ..., d}.

State 0 is the sink, d is the initial state and every nonzero state is
final.  Letters are the integers 0..sigma-1 with 0 playing the role of the
minimal letter a₀.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Set, Tuple

from app.automaton.words import EPWord, Word
from app.errors import AutomatonError, Violation, WordError

Table = Tuple[Tuple[int, ...], ...]
IntMatrix = Tuple[Tuple[int, ...], ...]


def validate(trans: Sequence[Sequence[int]]) -> List[Violation]:
    """Return every broken rule of a full transition table (row 0 included)."""
    violations: List[Violation] = []
    if len(trans) < 2:
        return [Violation("shape", None, None, "need at least one nonzero state")]
    sigma = len(trans[0])
    if sigma < 1:
        return [Violation("shape", 0, None, "alphabet must contain at least one letter")]
    d = len(trans) - 1
    for q, row in enumerate(trans):
        if len(row) != sigma:
            violations.append(Violation("shape", q, None, f"expected {sigma} entries, got {len(row)}"))
    if violations:
        return violations
    for q, row in enumerate(trans):
        for a, target in enumerate(row):
            if not 0 <= target <= d:
                violations.append(Violation("range", q, a, f"target {target} outside 0..{d}"))
    for a, target in enumerate(trans[0]):
        if target != 0:
            violations.append(Violation("sink", 0, a, f"state 0 must map to 0, found {target}"))
    for a in range(sigma):
        for q in range(1, d + 1):
            if trans[q - 1][a] > trans[q][a]:
                violations.append(
                    Violation(
                        "monotonicity",
                        q,
                        a,
                        f"tau({q - 1},{a})={trans[q - 1][a]} exceeds tau({q},{a})={trans[q][a]}",
                    )
                )
    return violations


@dataclass(frozen=True, slots=True)
class OrderedAutomaton:
    """Immutable, validated transition table."""

    trans: Table

    def __post_init__(self) -> None:
        problems = validate(self.trans)
        if problems:
            raise AutomatonError(problems)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "OrderedAutomaton":
        """Build from the rows of states 1..d; the sink row is added."""
        body = tuple(tuple(int(value) for value in row) for row in rows)
        if not body:
            raise AutomatonError([Violation("shape", None, None, "no states given")])
        return cls(((0,) * len(body[0]),) + body)

    @property
    def d(self) -> int:
        return len(self.trans) - 1

    @property
    def sigma(self) -> int:
        return len(self.trans[0])

    def _check_state(self, q: int) -> None:
        if not 0 <= q <= self.d:
            raise WordError(f"state {q} outside 0..{self.d}")

    def _check_letter(self, a: int) -> None:
        if not 0 <= a < self.sigma:
            raise WordError(f"letter {a} outside 0..{self.sigma - 1}")

    def step(self, q: int, word: Iterable[int]) -> int:
        self._check_state(q)
        state = q
        for a in word:
            self._check_letter(a)
            state = self.trans[state][a]
        return state

    def accepts(self, word: Iterable[int]) -> bool:
        return self.step(self.d, word) > 0

    def rows(self) -> Table:
        return self.trans[1:]


def mirror(aut: OrderedAutomaton) -> OrderedAutomaton:
    """Automaton of the reversed language: τ̃(r,a) = #{q : τ(q,a) + r > d}."""
    d = aut.d
    trans = tuple(
        tuple(sum(1 for q in range(d + 1) if aut.trans[q][a] + r > d) for a in range(aut.sigma))
        for r in range(d + 1)
    )
    return OrderedAutomaton(trans)


def is_self_mirror(aut: OrderedAutomaton) -> bool:
    return mirror(aut).trans == aut.trans


def split_membership(aut: OrderedAutomaton, mir: OrderedAutomaton, word: Word, j: int) -> bool:
    """Membership of ``word`` decided from its prefix of length j and the reversed suffix."""
    if not 0 <= j <= len(word):
        raise WordError(f"split index {j} outside 0..{len(word)}")
    head = aut.step(aut.d, word[:j])
    tail = mir.step(mir.d, reversed(word[j:]))
    return head + tail > aut.d


def incidence(aut: OrderedAutomaton) -> IntMatrix:
    """Transition multiplicities between the nonzero states (rows and columns 1..d)."""
    d = aut.d
    counts = [[0] * d for _ in range(d)]
    for q in range(1, d + 1):
        for target in aut.trans[q]:
            if target:
                counts[q - 1][target - 1] += 1
    return tuple(tuple(row) for row in counts)


def restricted_incidence(aut: OrderedAutomaton, states: Iterable[int]) -> IntMatrix:
    keep = sorted(states)
    full = incidence(aut)
    return tuple(tuple(full[q - 1][r - 1] for r in keep) for q in keep)


def max_word_from(aut: OrderedAutomaton, q: int) -> EPWord:
    """Lexicographically largest infinite word that never drives ``q`` into the sink."""
    aut._check_state(q)
    if q == 0:
        return EPWord((), (0,))
    seen = {}
    letters: List[int] = []
    state = q
    while state not in seen:
        seen[state] = len(letters)
        for a in range(aut.sigma - 1, -1, -1):
            if aut.trans[state][a]:
                letters.append(a)
                state = aut.trans[state][a]
                break
        else:
            raise AutomatonError(
                [Violation("dead-end", state, None, f"state {state} has no transition avoiding the sink")]
            )
    start = seen[state]
    return EPWord(tuple(letters[:start]), tuple(letters[start:])).canonical()


def trim_accessible_coaccessible(aut: OrderedAutomaton) -> Set[int]:
    """Nonzero states reachable from d.

    Co-accessibility holds for every nonzero state since all of them are
    final; the sink is never co-accessible.
    """
    reached = {aut.d}
    queue = deque([aut.d])
    while queue:
        state = queue.popleft()
        for target in aut.trans[state]:
            if target and target not in reached:
                reached.add(target)
                queue.append(target)
    return reached
