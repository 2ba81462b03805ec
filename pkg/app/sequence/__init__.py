"""Values of infinite words and the abstract van der Corput sequence."""
from app.sequence.values import (
    ValuedWord,
    VanDerCorputSequence,
    check_sequence_hypotheses,
    digit_table,
    epsilon,
    epsilon_sequence,
    synchronize,
    tail_value,
    valued_word,
    value,
    x_n,
)

__all__ = [
    "ValuedWord",
    "VanDerCorputSequence",
    "check_sequence_hypotheses",
    "digit_table",
    "epsilon",
    "epsilon_sequence",
    "synchronize",
    "tail_value",
    "valued_word",
    "value",
    "x_n",
]
