"""The β-automaton accepting the admissible digit strings."""
from __future__ import annotations

from typing import List

from app.automaton.ordered import OrderedAutomaton
from app.automaton.words import compare_words
from app.beta.expansion import BetaExpansion


def beta_automaton(expansion: BetaExpansion) -> OrderedAutomaton:
    """States q_j = #{1 ≤ k ≤ d : σ^{k-1} t ≤ σ^j t} for j < d, with bound b_{q_j} = t_{j+1}."""
    t = expansion.t
    d = expansion.length
    shifts = [t.shift(j) for j in range(d)]
    ranks = [sum(1 for other in shifts if compare_words(other, shift) <= 0) for shift in shifts]
    sigma = t.letter(1) + 1
    trans: List[List[int]] = [[0] * sigma for _ in range(d + 1)]
    for j, state in enumerate(ranks):
        bound = t.letter(j + 1)
        following = ranks[j + 1] if j + 1 < d else ranks[expansion.preperiod]
        for a in range(bound):
            trans[state][a] = d
        trans[state][bound] = following
    return OrderedAutomaton(tuple(tuple(row) for row in trans))
