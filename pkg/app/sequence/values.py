"""Normalized values ⟨u⟩, digit functionals ε_j, tails y_k and the sequence x_n."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

import structlog

from app.algebra.field import FieldElement
from app.automaton.ordered import OrderedAutomaton, mirror
from app.automaton.words import EPWord, Word, format_ep_word, format_word
from app.errors import HypothesisError, WordError
from app.numeration.shortlex import ShortlexSystem
from app.spectral.eigen import SpectralData
from app.spectral.matrices import is_pisot_automaton

logger = structlog.get_logger(__name__)

DigitTable = Tuple[Tuple[FieldElement, ...], ...]


def digit_table(aut: OrderedAutomaton, data: SpectralData) -> DigitTable:
    """``E[s][c] = Σ_{a<c} η_{τ(s,a)}``, so that ε_j = E[state before j][u_j]."""
    zero = data.field.zero
    table = []
    for s in range(aut.d + 1):
        row = [zero]
        for a in range(aut.sigma - 1):
            row.append(row[-1] + data.eta[aut.trans[s][a]])
        table.append(tuple(row))
    return tuple(table)


@dataclass(frozen=True, slots=True)
class ValuedWord:
    """A state-synchronized infinite word read from ``start`` with its ε-sequence and tails.

    ``states[j]`` is the state after j letters; ``states[m] == states[m + p]``.
    ``tails[k - 1]`` holds y_k for 1 <= k <= m + p.
    """

    word: EPWord
    start: int
    states: Tuple[int, ...]
    eps: Tuple[FieldElement, ...]
    tails: Tuple[FieldElement, ...]

    @property
    def m(self) -> int:
        return len(self.word.pre)

    @property
    def p(self) -> int:
        return len(self.word.per)

    @property
    def synchronized(self) -> bool:
        return self.states[self.m] == self.states[self.m + self.p]

    def _fold(self, j: int) -> int:
        """Representative position in 1..m+p with the same letter, state and tail."""
        if j < 1:
            raise WordError(f"positions start at 1, got {j}")
        if j <= self.m + self.p:
            return j
        return self.m + (j - self.m - 1) % self.p + 1

    def letter(self, j: int) -> int:
        return self.word.letter(j)

    def state_before(self, j: int) -> int:
        return self.states[self._fold(j) - 1]

    def epsilon(self, j: int) -> FieldElement:
        return self.eps[self._fold(j) - 1]

    def tail(self, k: int) -> FieldElement:
        return self.tails[self._fold(k) - 1]

    def phase(self, k: int) -> int:
        """Index of y_k among the distinct tails; positions past m repeat with period p."""
        return self._fold(k) - 1

    @property
    def value(self) -> FieldElement:
        return self.tails[0]

    def __str__(self) -> str:
        return format_ep_word(self.word)


def synchronize(aut: OrderedAutomaton, word: EPWord, start: int | None = None) -> EPWord:
    """Unroll the period until the automaton state repeats at period boundaries.

    Raises :class:`WordError` when some prefix drives ``start`` into the sink.
    """
    origin = aut.d if start is None else start
    state = origin
    word = word.canonical()

    def run(current: int, letters: Sequence[int]) -> int:
        for a in letters:
            current = aut.step(current, (a,))
            if current == 0:
                raise WordError(f"word {format_ep_word(word)} leaves the language from state {origin}")
        return current

    if state == 0:
        if word.pre or any(word.per):
            raise WordError("only a₀^ω is defined from the sink")
        return word
    state = run(state, word.pre)
    boundaries = [state]
    while True:
        state = run(state, word.per)
        if state in boundaries:
            first = boundaries.index(state)
            count = len(boundaries) - first
            return EPWord(word.pre + word.per * first, word.per * count)
        boundaries.append(state)


def valued_word(
    aut: OrderedAutomaton, data: SpectralData, word: EPWord, start: int | None = None
) -> ValuedWord:
    origin = aut.d if start is None else start
    synced = synchronize(aut, word, origin)
    table = digit_table(aut, data)
    letters = synced.pre + synced.per
    states = [origin]
    for a in letters:
        states.append(aut.trans[states[-1]][a])
    eps = tuple(table[states[j]][a] for j, a in enumerate(letters))
    tails = _tail_values(data, eps, len(synced.pre), len(synced.per))
    return ValuedWord(word=synced, start=origin, states=tuple(states), eps=eps, tails=tails)


def _tail_values(
    data: SpectralData, eps: Sequence[FieldElement], m: int, p: int
) -> Tuple[FieldElement, ...]:
    beta = data.beta
    field = data.field
    numerator = field.zero
    for i in range(p):
        numerator = numerator * beta + eps[m + i]
    ys: List[FieldElement] = [field.zero] * (m + p)
    ys[m] = numerator / (beta**p - 1)
    for k in range(m + 1, m + p):
        ys[k] = beta * ys[k - 1] - eps[k - 1]
    inverse = beta.inverse()
    for k in range(m - 1, -1, -1):
        ys[k] = (ys[k + 1] + eps[k]) * inverse
    return tuple(ys)


def epsilon(aut: OrderedAutomaton, data: SpectralData, u: EPWord, j: int) -> FieldElement:
    return valued_word(aut, data, u).epsilon(j)


def value(aut: OrderedAutomaton, data: SpectralData, u: EPWord) -> FieldElement:
    """⟨u⟩ = Σ ε_j(u) β^{-j}."""
    return valued_word(aut, data, u).value


def tail_value(aut: OrderedAutomaton, data: SpectralData, u: EPWord, k: int) -> FieldElement:
    """y_k = Σ_{j>=k} ε_j(u) β^{k-j-1}."""
    return valued_word(aut, data, u).tail(k)


def epsilon_sequence(
    aut: OrderedAutomaton, data: SpectralData, start: int, word: EPWord
) -> Tuple[Tuple[FieldElement, ...], Tuple[FieldElement, ...]]:
    """Eventually periodic ε-sequence of ``word`` read from ``start``: (preperiod, period)."""
    valued = valued_word(aut, data, word, start)
    return valued.eps[: valued.m], valued.eps[valued.m :]


def check_sequence_hypotheses(aut: OrderedAutomaton, *, require_pisot: bool = True) -> None:
    for q in range(1, aut.d + 1):
        if aut.trans[q][0] == 0:
            raise HypothesisError(f"tau({q},a0) = 0; the sequence needs tau(q,a0) > 0 for q > 0")
    if require_pisot and not is_pisot_automaton(aut):
        raise HypothesisError("automaton is not a Pisot automaton")


class VanDerCorputSequence:
    """x_n = ⟨w⟩ where the reversal of w is the n-th word of L̃′."""

    def __init__(self, aut: OrderedAutomaton, data: SpectralData, *, require_pisot: bool = True) -> None:
        check_sequence_hypotheses(aut, require_pisot=require_pisot)
        self.aut = aut
        self.data = data
        self.mir = mirror(aut)
        self.system = ShortlexSystem(self.mir, pruned=True)
        self._table = digit_table(aut, data)
        self._inverse_beta = data.beta.inverse()
        self._inverse_powers: List[FieldElement] = [data.field.one]
        self._terms: Dict[Tuple[int, int, int], FieldElement] = {}
        self._lock = threading.Lock()

    def _inverse_power(self, j: int) -> FieldElement:
        powers = self._inverse_powers
        if j >= len(powers):
            with self._lock:
                while len(powers) <= j:
                    powers.append(powers[-1] * self._inverse_beta)
        return powers[j]

    def _term(self, state: int, letter: int, j: int) -> FieldElement:
        key = (state, letter, j)
        term = self._terms.get(key)
        if term is None:
            term = self._table[state][letter] * self._inverse_power(j)
            self._terms[key] = term
        return term

    def finite_value(self, word: Word) -> FieldElement:
        """⟨w⟩ = ⟨w a₀^ω⟩ for a finite word of L."""
        total = self.data.field.zero
        state = self.aut.d
        for j, letter in enumerate(word, start=1):
            if letter:
                total = total + self._term(state, letter, j)
            state = self.aut.trans[state][letter]
            if state == 0:
                raise WordError(f"word {format_word(word)} is not in the language")
        return total

    def word(self, n: int) -> Word:
        return tuple(reversed(self.system.unrank(n)))

    def x(self, n: int) -> FieldElement:
        return self.finite_value(self.word(n))

    def iterate(self, start: int = 0) -> Iterator[Tuple[int, Word, FieldElement]]:
        """Yield (n, w, x_n) for n = start, start + 1, ... without re-ranking."""
        for n, mirrored in enumerate(self.system.iter_from(start), start=start):
            word = tuple(reversed(mirrored))
            yield n, word, self.finite_value(word)


def x_n(aut: OrderedAutomaton, mir: OrderedAutomaton, data: SpectralData, n: int) -> FieldElement:
    """Single term of the sequence; ``mir`` must be ``mirror(aut)``."""
    system = ShortlexSystem(mir, pruned=True)
    check_sequence_hypotheses(aut)
    word = tuple(reversed(system.unrank(n)))
    return valued_word(aut, data, EPWord.finite(word)).value
