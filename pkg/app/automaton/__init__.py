"""Totally ordered automata, their mirrors and eventually periodic words."""
from app.automaton.io import dump_automaton, load_automaton, parse_automaton
from app.automaton.ordered import (
    IntMatrix,
    OrderedAutomaton,
    incidence,
    is_self_mirror,
    max_word_from,
    mirror,
    restricted_incidence,
    split_membership,
    trim_accessible_coaccessible,
    validate,
)
from app.automaton.words import EPWord, Word, compare_words, format_ep_word, format_word, parse_ep_word, parse_word

__all__ = [
    "EPWord",
    "IntMatrix",
    "OrderedAutomaton",
    "Word",
    "compare_words",
    "dump_automaton",
    "format_ep_word",
    "format_word",
    "incidence",
    "is_self_mirror",
    "load_automaton",
    "max_word_from",
    "mirror",
    "parse_automaton",
    "parse_ep_word",
    "parse_word",
    "restricted_incidence",
    "split_membership",
    "trim_accessible_coaccessible",
    "validate",
]
