"""Bounded remainder criteria for intervals [0, ⟨u⟩)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import structlog

from app.automaton.ordered import OrderedAutomaton, max_word_from
from app.automaton.words import EPWord, Word, compare_words, format_word
from app.errors import HypothesisError, WordError
from app.sequence.values import ValuedWord, check_sequence_hypotheses, epsilon_sequence, tail_value
from app.spectral.eigen import SpectralData, zeta
from app.spectral.matrices import is_pisot_automaton

logger = structlog.get_logger(__name__)

LESS = -1
GREATER = -2


def _ep_item(pre: Sequence[Hashable], per: Sequence[Hashable], j: int) -> Hashable:
    if j < len(pre):
        return pre[j]
    return per[(j - len(pre)) % len(per)]


def _tails_agree(
    left: Tuple[Sequence[Hashable], Sequence[Hashable]],
    right: Tuple[Sequence[Hashable], Sequence[Hashable]],
) -> bool:
    horizon = max(len(left[0]), len(right[0])) + lcm(len(left[1]), len(right[1]))
    return all(
        _ep_item(left[0], left[1], j) == _ep_item(right[0], right[1], j) for j in range(horizon)
    )


def prop5_check(aut: OrderedAutomaton, data: SpectralData, u: ValuedWord) -> Optional[Tuple[int, int]]:
    """Smallest (m, q) with ε_{m+1}(u) ε_{m+2}(u) ⋯ equal to the ε-sequence of t_q read from q.

    t_q is the largest word that keeps q out of the sink; for q = 0 its
    ε-sequence is identically zero.
    """
    zero = data.field.zero
    targets: List[Tuple[Sequence[Hashable], Sequence[Hashable]]] = [((), (zero,))]
    for q in range(1, aut.d + 1):
        targets.append(epsilon_sequence(aut, data, q, max_word_from(aut, q)))
    pre, per = u.eps[: u.m], u.eps[u.m :]
    for m in range(u.m + u.p):
        if m <= len(pre):
            shifted: Tuple[Sequence[Hashable], Sequence[Hashable]] = (pre[m:], per)
        else:
            offset = m - len(pre)
            shifted = ((), per[offset:] + per[:offset])
        for q, target in enumerate(targets):
            if _tails_agree(shifted, target):
                return m, q
    return None


@dataclass(frozen=True, slots=True)
class MonotoneProfile:
    """The map q ↦ τ(q, v) for the word v read so far."""

    map: Tuple[int, ...]

    @classmethod
    def identity(cls, aut: OrderedAutomaton) -> "MonotoneProfile":
        return cls(tuple(range(aut.d + 1)))

    def extend(self, aut: OrderedAutomaton, letter: int) -> "MonotoneProfile":
        return MonotoneProfile(tuple(aut.trans[state][letter] for state in self.map))

    @property
    def mirror_state(self) -> int:
        """τ̃(d, ṽ), the number of states that v keeps out of the sink."""
        return sum(1 for state in self.map if state > 0)

    @property
    def dead(self) -> bool:
        return not any(self.map)


@dataclass(frozen=True, slots=True)
class Witness:
    v: Word
    k: int
    expected: int
    zeta_value: Fraction

    def describe(self) -> str:
        return (
            f"v={format_word(self.v)} k={self.k}: indicator {self.expected} "
            f"but zeta = {self.zeta_value}"
        )


@dataclass(frozen=True, slots=True)
class BrsVerdict:
    decision: str
    pisot: bool
    minimal_letter_rule: bool
    witness: Optional[Witness] = None
    prop5: Optional[Tuple[int, int]] = None
    explored: int = 0
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def hypotheses_met(self) -> bool:
        return self.pisot and self.minimal_letter_rule

    @property
    def label(self) -> str:
        if self.hypotheses_met:
            return self.decision
        missing = []
        if not self.pisot:
            missing.append("not Pisot")
        if not self.minimal_letter_rule:
            missing.append("tau(q,a0) <= q for some q")
        return f"{self.decision} (hypotheses-not-met: {', '.join(missing)})"


def _nonzero_ahead(tail: EPWord, phases: int) -> List[bool]:
    flags = []
    for i in range(phases):
        rest = tail.shift(i)
        flags.append(any(rest.pre) or any(rest.per))
    return flags


def _fold_phase(tail: EPWord, i: int) -> int:
    m, p = len(tail.pre), len(tail.per)
    return i if i < m else m + (i - m) % p


def _check_position(
    aut: OrderedAutomaton, data: SpectralData, u: ValuedWord, k: int
) -> Tuple[Optional[Witness], int]:
    """Breadth-first search over (profile, comparison) classes of v for one position k."""
    tail = u.word.shift(k - 1)
    phases = len(tail.pre) + len(tail.per)
    ahead = _nonzero_ahead(tail, phases)
    state_k = u.state_before(k)
    y_k = u.tail(k)
    required = [zeta(data, r, y_k) for r in range(aut.d + 1)]

    start = (MonotoneProfile.identity(aut), 0)
    parents: Dict[Tuple[MonotoneProfile, int], Optional[Tuple[Tuple[MonotoneProfile, int], int]]] = {
        start: None
    }
    queue = deque([start])
    while queue:
        node = queue.popleft()
        profile, comparison = node
        less = comparison == LESS or (comparison >= 0 and ahead[comparison])
        indicator = int(less and profile.map[state_k] > 0)
        value = required[profile.mirror_state]
        if value != indicator:
            return Witness(_word_of(parents, node), k, indicator, value), len(parents)
        if profile.dead:
            continue
        for letter in range(aut.sigma):
            if comparison >= 0:
                target = tail.letter(comparison + 1)
                if letter < target:
                    following = LESS
                elif letter > target:
                    following = GREATER
                else:
                    following = _fold_phase(tail, comparison + 1)
            else:
                following = comparison
            child = (profile.extend(aut, letter), following)
            if child not in parents:
                parents[child] = (node, letter)
                queue.append(child)
    return None, len(parents)


def _word_of(parents: Dict, node: Tuple[MonotoneProfile, int]) -> Word:
    letters: List[int] = []
    link = parents[node]
    while link is not None:
        node, letter = link
        letters.append(letter)
        link = parents[node]
    return tuple(reversed(letters))


def thm2_decide(
    aut: OrderedAutomaton, data: SpectralData, u: ValuedWord, *, pisot: Optional[bool] = None
) -> BrsVerdict:
    """Decide whether [0, ⟨u⟩) is a bounded remainder set.

    For every k in one synchronized period past the preperiod, every class
    of words v must satisfy ζ_{τ̃(d,ṽ)}(y_k) = [v a₀^ω < u_k u_{k+1}⋯ and
    u₁⋯u_{k-1} v ∈ L]; a mismatch is returned as a witness.
    """
    if u.start != aut.d:
        raise WordError("u must be read from the initial state")
    check_sequence_hypotheses(aut, require_pisot=False)
    minimal_letter_rule = all(aut.trans[q][0] > q for q in range(1, aut.d))
    data.require_theta()
    pisot_flag = is_pisot_automaton(aut) if pisot is None else pisot
    prop5 = prop5_check(aut, data, u)
    explored = 0
    witness: Optional[Witness] = None
    for k in range(u.m + 1, u.m + u.p + 1):
        witness, states = _check_position(aut, data, u, k)
        explored += states
        if witness is not None:
            break
    verdict = BrsVerdict(
        decision="unbounded" if witness else "bounded",
        pisot=pisot_flag,
        minimal_letter_rule=minimal_letter_rule,
        witness=witness,
        prop5=prop5,
        explored=explored,
    )
    logger.info("brs_verdict", u=str(u), decision=verdict.decision, explored=explored, prop5=prop5)
    if prop5 is not None and witness is not None:
        logger.warning("brs_prop5_conflict", u=str(u), prop5=prop5, witness=witness.describe())
    return verdict


def verify_witness(
    aut: OrderedAutomaton, data: SpectralData, u: ValuedWord, witness: Witness
) -> bool:
    """Recompute both sides for ``witness`` from scratch; True when they indeed differ."""
    k, v = witness.k, witness.v
    state = aut.step(aut.d, u.word.prefix(k - 1))
    if state == 0:
        raise HypothesisError("u leaves the language before position k")
    less = compare_words(EPWord.finite(v), u.word.shift(k - 1)) < 0
    indicator = int(less and aut.step(state, v) > 0)
    r = sum(1 for q in range(1, aut.d + 1) if aut.step(q, v) > 0)
    value = zeta(data, r, tail_value(aut, data, u.word, k))
    return indicator == witness.expected and value == witness.zeta_value and value != indicator
