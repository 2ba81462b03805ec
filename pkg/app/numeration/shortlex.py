"""Shortlex ranking in L and in the pruned mirror language L̃′.

L̃′ is handled without a separate automaton: it is ε together with the
words of the mirror language whose first letter is not a₀.
"""
from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Iterator, List, Optional

from app.automaton.ordered import OrderedAutomaton
from app.automaton.words import Word, format_word
from app.errors import HypothesisError, RankError, WordError
from app.numeration.counting import count_words, path_counter


class ShortlexSystem:
    """Numeration in the words accepted from state d, optionally without a leading a₀."""

    def __init__(self, aut: OrderedAutomaton, *, pruned: bool = False) -> None:
        self.aut = aut
        self.pruned = pruned
        self.counter = path_counter(aut, 0)
        self._cumulative: List[int] = [0]

    def _first_letters(self) -> range:
        return range(1 if self.pruned else 0, self.aut.sigma)

    def words_of_length(self, length: int) -> int:
        if length == 0:
            return 1
        if not self.pruned:
            return self.counter.count(self.aut.d, length)
        d = self.aut.d
        return sum(self.counter.count(self.aut.trans[d][a], length - 1) for a in self._first_letters())

    def cumulative(self, length: int) -> int:
        """Number of words shorter than ``length``."""
        totals = self._cumulative
        while len(totals) <= length:
            totals.append(totals[-1] + self.words_of_length(len(totals) - 1))
        return totals[length]

    def contains(self, word: Word) -> bool:
        if self.pruned and word and word[0] == 0:
            return False
        return self.aut.accepts(word)

    def rank(self, word: Word) -> int:
        if not self.contains(word):
            raise RankError(f"word {format_word(word)} is not in the language")
        length = len(word)
        total = self.cumulative(length)
        state = self.aut.d
        for i, letter in enumerate(word):
            start = 1 if (self.pruned and i == 0) else 0
            remaining = length - i - 1
            for a in range(start, letter):
                total += self.counter.count(self.aut.trans[state][a], remaining)
            state = self.aut.trans[state][letter]
        return total

    def _length_of(self, n: int) -> int:
        high = 1
        while self.cumulative(high) <= n:
            if high > 1 and self.words_of_length(high - 1) == 0:
                raise RankError(f"rank {n} exceeds the size of the (finite) language")
            high *= 2
        self.cumulative(high)
        return bisect_right(self._cumulative, n, 0, high + 1) - 1

    def unrank(self, n: int) -> Word:
        if n < 0:
            raise RankError(f"ranks are nonnegative, got {n}")
        length = self._length_of(n)
        rest = n - self.cumulative(length)
        word: List[int] = []
        state = self.aut.d
        for i in range(length):
            start = 1 if (self.pruned and i == 0) else 0
            remaining = length - i - 1
            for a in range(start, self.aut.sigma):
                target = self.aut.trans[state][a]
                block = self.counter.count(target, remaining)
                if rest < block:
                    word.append(a)
                    state = target
                    break
                rest -= block
            else:
                raise RankError(f"could not unrank {n}")
        return tuple(word)

    def _minimal_completion(self, state: int, length: int) -> Optional[Word]:
        word: List[int] = []
        for remaining in range(length - 1, -1, -1):
            for a in range(self.aut.sigma):
                target = self.aut.trans[state][a]
                if self.counter.count(target, remaining):
                    word.append(a)
                    state = target
                    break
            else:
                return None
        return tuple(word)

    def successor(self, word: Word) -> Word:
        """Next word in shortlex order."""
        length = len(word)
        states = [self.aut.d]
        for letter in word:
            states.append(self.aut.trans[states[-1]][letter])
        for i in range(length - 1, -1, -1):
            remaining = length - i - 1
            for a in range(word[i] + 1, self.aut.sigma):
                target = self.aut.trans[states[i]][a]
                if target and self.counter.count(target, remaining):
                    tail = self._minimal_completion(target, remaining)
                    if tail is not None:
                        return word[:i] + (a,) + tail
        if self.words_of_length(length + 1) == 0:
            raise RankError("language is finite; no successor")
        return self.unrank(self.cumulative(length + 1))

    def iter_from(self, n: int = 0) -> Iterator[Word]:
        word = self.unrank(n)
        while True:
            yield word
            word = self.successor(word)


def _check_minimal_letter(aut: OrderedAutomaton) -> None:
    for q in range(1, aut.d + 1):
        if aut.trans[q][0] == 0:
            raise HypothesisError(f"tau({q},a0) = 0; the pruned mirror language needs tau(q,a0) > 0")


def rank(aut: OrderedAutomaton, word: Word) -> int:
    return ShortlexSystem(aut).rank(word)


def unrank(aut: OrderedAutomaton, n: int) -> Word:
    return ShortlexSystem(aut).unrank(n)


def lprime_rank(aut: OrderedAutomaton, mir: OrderedAutomaton, word: Word) -> int:
    """Rank of a mirror-side word in L̃′."""
    _check_minimal_letter(aut)
    system = ShortlexSystem(mir, pruned=True)
    if not system.contains(word):
        raise WordError(f"word {format_word(word)} is not in the pruned mirror language")
    return system.rank(word)


def lprime_unrank(aut: OrderedAutomaton, mir: OrderedAutomaton, n: int) -> Word:
    """Mirror-side word of rank n in L̃′ (reverse it to get the value-side word)."""
    _check_minimal_letter(aut)
    return ShortlexSystem(mir, pruned=True).unrank(n)


def iter_words(aut: OrderedAutomaton, length: int, start: int | None = None) -> Iterator[Word]:
    """Words of the given length accepted from ``start`` (default d), in lexicographic order."""
    counter = path_counter(aut, 0)
    origin = aut.d if start is None else start

    def walk(state: int, remaining: int, prefix: Word) -> Iterator[Word]:
        if remaining == 0:
            yield prefix
            return
        for a in range(aut.sigma):
            target = aut.trans[state][a]
            if counter.count(target, remaining - 1):
                yield from walk(target, remaining - 1, prefix + (a,))

    if counter.count(origin, length):
        yield from walk(origin, length, ())


def valomega_ratio(aut: OrderedAutomaton, prefix: Word) -> Fraction:
    """rank(u₁⋯u_k) / #{v ∈ L : |v| <= k}, which tends to (⟨u⟩(β-1)+1)/β."""
    system = ShortlexSystem(aut)
    return Fraction(system.rank(prefix), system.cumulative(len(prefix) + 1))


__all__ = [
    "ShortlexSystem",
    "count_words",
    "iter_words",
    "lprime_rank",
    "lprime_unrank",
    "rank",
    "unrank",
    "valomega_ratio",
]
