"""β-adic constructions: quasi-greedy expansion of 1, β-automaton, β-polynomial."""
from app.beta.automaton import beta_automaton
from app.beta.expansion import (
    BetaExpansion,
    beta_polynomial,
    check_admissibility,
    digits_value,
    has_root,
    quasi_greedy_one,
)

__all__ = [
    "BetaExpansion",
    "beta_automaton",
    "beta_polynomial",
    "check_admissibility",
    "digits_value",
    "has_root",
    "quasi_greedy_one",
]
