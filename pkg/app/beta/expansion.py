"""Quasi-greedy expansion of 1 in base β and the β-polynomial."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

import structlog

from app.algebra.field import FieldElement, NumberField
from app.algebra.roots import is_pisot_polynomial
from app.automaton.words import EPWord, compare_words
from app.errors import CapExceededError, ConsistencyError, HypothesisError

logger = structlog.get_logger(__name__)

DEFAULT_REMAINDER_CAP = 1_000_000


def digits_value(field: NumberField, t: EPWord) -> FieldElement:
    """Σ t_j β^{-j} for an eventually periodic digit sequence."""
    inverse = field.beta.inverse()
    head = field.zero
    scale = field.one
    for digit in t.pre:
        scale = scale * inverse
        head = head + scale * digit
    cycle = field.zero
    step = field.one
    for digit in t.per:
        step = step * inverse
        cycle = cycle + step * digit
    return head + scale * cycle / (1 - step)


@dataclass(frozen=True, slots=True)
class BetaExpansion:
    """Digits t₁t₂⋯ of 1, stored with minimal preperiod and period."""

    t: EPWord
    field: NumberField

    @property
    def preperiod(self) -> int:
        return len(self.t.pre)

    @property
    def length(self) -> int:
        return len(self.t.pre) + len(self.t.per)

    def value_check(self) -> bool:
        return digits_value(self.field, self.t) == 1

    def __str__(self) -> str:
        head = "".join(str(digit) for digit in self.t.pre)
        return f"{head}({''.join(str(digit) for digit in self.t.per)})^ω"


def _next_digit(x: FieldElement) -> int:
    if x.is_rational and x.coeffs[0].denominator == 1:
        return int(x.coeffs[0]) - 1
    return x.floor()


def quasi_greedy_one(
    field: NumberField,
    *,
    remainder_cap: int = DEFAULT_REMAINDER_CAP,
    allow_non_pisot: bool = False,
) -> BetaExpansion:
    """Digits of the infinite expansion of 1, keeping every remainder in (0, 1].

    The remainders of a Pisot base form a finite set, so the first repeated
    remainder closes the period.
    """
    if not is_pisot_polynomial(field.minpoly):
        if not allow_non_pisot:
            raise HypothesisError("β is not a Pisot number; the expansion of 1 may not be periodic")
        logger.warning("non_pisot_expansion", minpoly=field.minpoly)
    remainder = field.one
    seen: Dict[FieldElement, int] = {remainder: 0}
    digits: List[int] = []
    while True:
        x = field.beta * remainder
        digit = _next_digit(x)
        digits.append(digit)
        remainder = x - digit
        if remainder in seen:
            start = seen[remainder]
            break
        if len(seen) >= remainder_cap:
            raise CapExceededError(f"more than {remainder_cap} distinct remainders")
        seen[remainder] = len(digits)
    expansion = BetaExpansion(EPWord(tuple(digits[:start]), tuple(digits[start:])).canonical(), field)
    if not expansion.value_check():
        raise ConsistencyError(f"digits {expansion} do not sum to 1")
    logger.info("quasi_greedy_ready", expansion=str(expansion), remainders=len(seen))
    return expansion


def check_admissibility(t: EPWord) -> bool:
    """Every shift of t is at most t, and t does not end in zeros."""
    if t.tail_is_zero:
        return False
    horizon = len(t.pre) + len(t.per)
    return all(compare_words(t.shift(j), t) <= 0 for j in range(1, horizon + 1))


def _truncated(t: EPWord, length: int) -> List[int]:
    """Coefficients of x^length − t₁x^{length−1} − ⋯ − t_length, lowest degree first."""
    coeffs = [0] * (length + 1)
    coeffs[length] = 1
    for i in range(1, length + 1):
        coeffs[length - i] -= t.letter(i)
    return coeffs


def beta_polynomial(expansion: BetaExpansion) -> Tuple[int, ...]:
    t = expansion.t
    full = _truncated(t, expansion.length)
    for power, coefficient in enumerate(_truncated(t, expansion.preperiod)):
        full[power] -= coefficient
    while len(full) > 1 and full[-1] == 0:
        full.pop()
    return tuple(full)


def has_root(coeffs: Tuple[int, ...], field: NumberField) -> bool:
    total = field.zero
    for coefficient in reversed(coeffs):
        total = total * field.beta + coefficient
    return total.is_zero
