"""Memoized path counts: how many words of length k keep a state above a threshold."""
from __future__ import annotations

import threading
from functools import lru_cache
from typing import List, Tuple

from app.automaton.ordered import OrderedAutomaton


class PathCounter:
    """Rows ``c_k[s] = #{v ∈ A^k : τ(s, v) > threshold}`` built lazily by length."""

    def __init__(self, aut: OrderedAutomaton, threshold: int = 0) -> None:
        self.aut = aut
        self.threshold = threshold
        self._rows: List[Tuple[int, ...]] = [
            tuple(int(s > threshold) for s in range(aut.d + 1))
        ]
        self._lock = threading.Lock()

    def row(self, k: int) -> Tuple[int, ...]:
        rows = self._rows
        if k < len(rows):
            return rows[k]
        trans = self.aut.trans
        with self._lock:
            while len(rows) <= k:
                last = rows[-1]
                rows.append(tuple(sum(last[target] for target in trans[s]) for s in range(len(trans))))
        return rows[k]

    def count(self, q: int, k: int) -> int:
        return self.row(k)[q]


@lru_cache(maxsize=256)
def path_counter(aut: OrderedAutomaton, threshold: int = 0) -> PathCounter:
    return PathCounter(aut, threshold)


def count_words(aut: OrderedAutomaton, q: int, k: int) -> int:
    """Number of length-k words that keep state q out of the sink."""
    if k < 0:
        raise ValueError(f"length must be nonnegative, got {k}")
    return path_counter(aut, 0).count(q, k)


def count_L(aut: OrderedAutomaton, q: int, r: int, k: int) -> int:
    """#{v ∈ A^k : τ(q, v) + r > d}, the row vector of M_L^k applied to the indicator of states > d-r."""
    if k < 0:
        raise ValueError(f"length must be nonnegative, got {k}")
    if q == 0 or r == 0:
        return 0
    return path_counter(aut, aut.d - r).count(q, k)
