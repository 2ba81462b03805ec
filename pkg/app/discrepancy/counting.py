"""The discrepancy function D(N, [0, y)) computed by brute force and by counting formulas."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Dict, List, Tuple

from app.algebra.field import FieldElement
from app.automaton.words import EPWord, Word, compare_words
from app.errors import CapExceededError, WordError
from app.numeration.counting import count_L
from app.sequence.values import ValuedWord, VanDerCorputSequence
from app.spectral.eigen import zeta

DEFAULT_BRUTE_CAP = 1_000_000


@dataclass(frozen=True, slots=True)
class DiscrepancyPoint:
    N: int
    count: int
    D: FieldElement


def check_unit_interval(y: FieldElement) -> None:
    if y < 0 or y > 1:
        raise WordError(f"y = {y.to_decimal(6)} lies outside [0, 1]")


def check_brute_cap(N: int, cap: int) -> None:
    if N > cap:
        raise CapExceededError(f"N = {N} exceeds the brute-force cap {cap}")


def brute_D(
    seq: VanDerCorputSequence, N: int, y: FieldElement, *, cap: int = DEFAULT_BRUTE_CAP
) -> DiscrepancyPoint:
    """Generate x_0, ..., x_{N-1} and count exact comparisons against y."""
    check_brute_cap(N, cap)
    check_unit_interval(y)
    count = sum(1 for _, _, x in islice(seq.iterate(), N) if x < y)
    return DiscrepancyPoint(N=N, count=count, D=count - N * y)


@dataclass(frozen=True, slots=True)
class DiscrepancyParts:
    N: int
    structured_count: int
    correction: int
    principal: Fraction


class StructuredDiscrepancy:
    """Counting-formula evaluation of D(N, [0, ⟨u⟩)) for a fixed u.

    N is represented by rep(N) = w_ℓ ⋯ w_1 in L̃′; w_k below is the k-th
    letter counted from the right end of that mirror-side word.
    """

    def __init__(self, seq: VanDerCorputSequence, u: ValuedWord) -> None:
        if u.start != seq.aut.d:
            raise WordError("u must be read from the initial state")
        self.seq = seq
        self.u = u
        self._zeta: Dict[Tuple[int, int], Fraction] = {}

    def representation(self, N: int) -> Word:
        return self.seq.system.unrank(N)

    def _mirror_states(self, rep: Word) -> List[int]:
        """states[k] = τ̃(d, w_ℓ ⋯ w_{k+1}) for k = 0..ℓ."""
        mir = self.seq.mir
        length = len(rep)
        states = [0] * (length + 1)
        states[length] = mir.d
        for k in range(length, 0, -1):
            states[k - 1] = mir.trans[states[k]][rep[length - k]]
        return states

    def structured_count(self, N: int) -> int:
        """#{n < N : x_n < ⟨u⟩} as the double sum of path counts plus the correction term."""
        rep = self.representation(N)
        return self._main_sum(rep) + self.correction_of(rep)

    def _main_sum(self, rep: Word) -> int:
        aut, mir, u = self.seq.aut, self.seq.mir, self.u
        length = len(rep)
        mirror_states = self._mirror_states(rep)
        right = {
            k: [mir.trans[mirror_states[k]][b] for b in range(rep[length - k])] for k in range(1, length + 1)
        }
        total = 0
        for j in range(1, length):
            state = u.state_before(j)
            for a in range(u.letter(j)):
                q = aut.trans[state][a]
                if q == 0:
                    continue
                for k in range(j + 1, length + 1):
                    for r in right[k]:
                        if r:
                            total += count_L(aut, q, r, k - j - 1)
        return total

    def correction_of(self, rep: Word) -> int:
        """C(N, u) from the mirror-side representation of N."""
        aut, u = self.seq.aut, self.u
        d = aut.d
        length = len(rep)
        mirror_states = self._mirror_states(rep)
        total = 0
        for k in range(1, length + 1):
            state = u.state_before(k)
            tail = u.word.shift(k - 1)
            suffix = tuple(rep[length - i] for i in range(k + 1, length + 1))
            for b in range(rep[length - k]):
                if aut.trans[state][b] + mirror_states[k] <= d:
                    continue
                if compare_words(EPWord.finite((b,) + suffix), tail) < 0:
                    total += 1
        return total

    def correction(self, N: int) -> int:
        return self.correction_of(self.representation(N))

    def _zeta_tail(self, r: int, k: int) -> Fraction:
        key = (r, self.u.phase(k))
        cached = self._zeta.get(key)
        if cached is None:
            cached = zeta(self.seq.data, r, self.u.tail(k))
            self._zeta[key] = cached
        return cached

    def principal(self, N: int) -> Fraction:
        """C(N, u) - Σ_k Σ_{b < w_k} ζ_{τ̃(d, w_ℓ ⋯ w_{k+1} b)}(y_k), without the O(1) term."""
        rep = self.representation(N)
        self.seq.data.require_theta()
        mir = self.seq.mir
        length = len(rep)
        mirror_states = self._mirror_states(rep)
        total = Fraction(self.correction_of(rep))
        for k in range(1, length + 1):
            for b in range(rep[length - k]):
                r = mir.trans[mirror_states[k]][b]
                if r:
                    total -= self._zeta_tail(r, k)
        return total

    def parts(self, N: int) -> DiscrepancyParts:
        rep = self.representation(N)
        correction = self.correction_of(rep)
        return DiscrepancyParts(
            N=N,
            structured_count=self._main_sum(rep) + correction,
            correction=correction,
            principal=self.principal(N),
        )


def structured_count(seq: VanDerCorputSequence, N: int, u: ValuedWord) -> int:
    return StructuredDiscrepancy(seq, u).structured_count(N)


def correction_C(seq: VanDerCorputSequence, u: ValuedWord, rep: Word) -> int:
    """C(N, u) for the mirror-side representation ``rep`` of N."""
    return StructuredDiscrepancy(seq, u).correction_of(rep)


def gamma(seq: VanDerCorputSequence, rep: Word, k: int) -> FieldElement:
    theta = seq.data.require_theta()
    length = len(rep)
    if not 1 <= k <= length:
        raise WordError(f"k = {k} outside 1..{length}")
    state = seq.mir.d
    for i in range(length, k, -1):
        state = seq.mir.trans[state][rep[length - i]]
    total = seq.data.field.zero
    for b in range(rep[length - k]):
        total = total + theta[seq.mir.trans[state][b]]
    return total


def principal_D(seq: VanDerCorputSequence, N: int, u: ValuedWord) -> Fraction:
    return StructuredDiscrepancy(seq, u).principal(N)
