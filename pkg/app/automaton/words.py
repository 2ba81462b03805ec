"""Finite and eventually periodic words over the dense alphabet 0..sigma-1."""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Tuple

from app.errors import WordError

Word = Tuple[int, ...]

EMPTY_WORD_TOKENS = {"", "ε", "eps"}


def is_decimal(token: str) -> bool:
    """True for a nonempty run of ASCII digits."""
    return token.isascii() and token.isdigit()


def parse_word(text: str) -> Word:
    """Parse a comma separated list of letter indices; ``ε`` denotes the empty word."""
    stripped = text.strip()
    if stripped in EMPTY_WORD_TOKENS:
        return ()
    letters = []
    for token in stripped.split(","):
        token = token.strip()
        if not is_decimal(token):
            raise WordError(f"invalid letter {token!r} in word {text!r}")
        letters.append(int(token))
    return tuple(letters)


def format_word(word: Iterable[int]) -> str:
    letters = tuple(word)
    if not letters:
        return "ε"
    return ",".join(str(letter) for letter in letters)


@dataclass(frozen=True, slots=True)
class EPWord:
    """Eventually periodic infinite word ``pre · per^ω``."""

    pre: Word
    per: Word

    def __post_init__(self) -> None:
        if not self.per:
            raise WordError("period of an eventually periodic word must be nonempty")
        if any(letter < 0 for letter in self.pre + self.per):
            raise WordError("letters must be nonnegative")

    @classmethod
    def finite(cls, word: Iterable[int]) -> "EPWord":
        """The completion ``w a₀^ω`` of a finite word."""
        return cls(tuple(word), (0,))

    def letter(self, j: int) -> int:
        """Letter at 1-based position ``j``."""
        if j < 1:
            raise WordError(f"positions start at 1, got {j}")
        if j <= len(self.pre):
            return self.pre[j - 1]
        return self.per[(j - len(self.pre) - 1) % len(self.per)]

    def prefix(self, length: int) -> Word:
        return tuple(self.letter(j) for j in range(1, length + 1))

    def shift(self, count: int) -> "EPWord":
        """Drop the first ``count`` letters."""
        if count <= len(self.pre):
            return EPWord(self.pre[count:], self.per)
        offset = (count - len(self.pre)) % len(self.per)
        return EPWord((), self.per[offset:] + self.per[:offset])

    @property
    def tail_is_zero(self) -> bool:
        return all(letter == 0 for letter in self.per)

    def canonical(self) -> "EPWord":
        """Equivalent word with primitive period and shortest preperiod."""
        per = self.per
        size = len(per)
        for candidate in range(1, size + 1):
            if size % candidate == 0 and per == per[:candidate] * (size // candidate):
                per = per[:candidate]
                break
        pre = self.pre
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = (per[-1],) + per[:-1]
        return EPWord(pre, per)

    def __str__(self) -> str:
        return format_ep_word(self)


def compare_words(left: EPWord, right: EPWord) -> int:
    """Lexicographic comparison of two infinite words: -1, 0 or 1."""
    horizon = max(len(left.pre), len(right.pre)) + lcm(len(left.per), len(right.per))
    for j in range(1, horizon + 1):
        a, b = left.letter(j), right.letter(j)
        if a != b:
            return -1 if a < b else 1
    return 0


def parse_ep_word(text: str) -> EPWord:
    """Parse ``pre|per`` (comma separated letters); a plain word means ``w a₀^ω``."""
    if "|" not in text:
        return EPWord.finite(parse_word(text))
    head, _, tail = text.partition("|")
    if "|" in tail:
        raise WordError(f"more than one '|' in {text!r}")
    per = parse_word(tail)
    if not per:
        raise WordError(f"empty period in {text!r}")
    return EPWord(parse_word(head), per)


def format_ep_word(word: EPWord) -> str:
    head = ",".join(str(letter) for letter in word.pre)
    return f"{head}|{','.join(str(letter) for letter in word.per)}"
