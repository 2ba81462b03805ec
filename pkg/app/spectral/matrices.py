"""Characteristic polynomials, primitivity and the Pisot property of automata."""
from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np
import sympy

from app.algebra.polynomials import X, integer_coefficients
from app.algebra.roots import classify_roots
from app.automaton.ordered import OrderedAutomaton, restricted_incidence, trim_accessible_coaccessible


def charpoly(matrix: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Monic characteristic polynomial, coefficients from x^0 upwards."""
    return integer_coefficients(sympy.Matrix(matrix).charpoly(X))


def is_primitive(matrix: Sequence[Sequence[int]]) -> bool:
    """Some power up to the Wielandt bound (n-1)^2 + 1 is entrywise positive."""
    pattern = (np.asarray(matrix, dtype=np.int64) > 0).astype(np.int64)
    n = pattern.shape[0]
    power = pattern.copy()
    for _ in range((n - 1) ** 2 + 1):
        if power.all():
            return True
        power = ((power @ pattern) > 0).astype(np.int64)
    return False


def is_pisot_automaton(aut: OrderedAutomaton) -> bool:
    states = trim_accessible_coaccessible(aut)
    return classify_roots(charpoly(restricted_incidence(aut, states))).is_pisot
