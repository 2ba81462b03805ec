from fractions import Fraction
from functools import cmp_to_key
from itertools import islice

import pytest

from app.automaton.ordered import mirror
from app.automaton.words import EPWord, compare_words, format_ep_word, parse_ep_word
from app.errors import HypothesisError, WordError
from app.numeration.shortlex import iter_words
from app.sequence.values import (
    VanDerCorputSequence,
    check_sequence_hypotheses,
    epsilon_sequence,
    synchronize,
    valued_word,
    value,
    x_n,
)


def _closed_forms(data):
    b = data.beta
    e2, e3 = data.eta[2], data.eta[3]
    return [
        data.field.zero,
        e3 / b,
        (e3 + e2) / b,
        e3 / b**2,
        (e3 + e2) / b**2,
        e3 / b + e3 / b**2,
        (e3 + e2) / b + e2 / b**2,
        e3 / b**3,
        e3 / b + e3 / b**3,
        (e3 + e2) / b**3,
        e3 / b + (e3 + e2) / b**3,
        (e3 + e2) / b + e3 / b**3,
        e3 / b**2 + e3 / b**3,
        (e3 + e2) / b**2 + e2 / b**3,
        e3 / b + e3 / b**2 + e2 / b**3,
        (e3 + e2) / b + e2 / b**2 + e2 / b**3,
    ]


def test_first_sixteen_terms(example1_seq, example1_data):
    expected = _closed_forms(example1_data)
    produced = [x for _, _, x in islice(example1_seq.iterate(), 16)]
    assert produced == expected
    assert [example1_seq.x(n) for n in range(16)] == expected


def test_single_term_helper(example1, example1_data):
    assert x_n(example1, mirror(example1), example1_data, 6) == _closed_forms(example1_data)[6]


def test_value_of_maximal_word(example1, example1_data):
    assert value(example1, example1_data, EPWord((), (2,))) == 1


def test_epsilon_sequence_of_maximal_word(example1, example1_data):
    eta = example1_data.eta
    pre, per = epsilon_sequence(example1, example1_data, 3, EPWord((), (2,)))
    assert pre == (eta[3] + eta[2],)
    assert per == (eta[2],)


def test_synchronization_unrolls_period(example1):
    assert synchronize(example1, EPWord((), (2,))) == EPWord((2,), (2,))
    with pytest.raises(WordError):
        synchronize(example1, EPWord((), (1, 2)))


def test_tails_follow_the_recurrence(example1, example1_data):
    u = valued_word(example1, example1_data, parse_ep_word("0,1|2,0"))
    beta = example1_data.beta
    for k in range(1, 12):
        assert u.tail(k + 1) == beta * u.tail(k) - u.epsilon(k)
    assert u.value == u.tail(1)


def test_values_lie_in_unit_interval(example1_seq):
    for _, _, x in islice(example1_seq.iterate(), 200):
        assert 0 <= x < 1


def test_terms_are_distinct(example1_seq):
    terms = [x for _, _, x in islice(example1_seq.iterate(), 2000)]
    assert len(set(terms)) == 2000


def test_value_is_monotone_in_lexicographic_order(example1, example1_data):
    words = [EPWord.finite(word) for length in range(5) for word in iter_words(example1, length)]
    words += [parse_ep_word(text) for text in ("|2", "|2,0", "|1,0", "0|2", "1|0,2", "|0,1", "|2,2,0")]
    words.sort(key=cmp_to_key(compare_words))
    values = [value(example1, example1_data, word) for word in words]
    for left, right, lower, upper in zip(words, words[1:], values, values[1:]):
        assert lower <= upper, (format_ep_word(left), format_ep_word(right))


def test_binary_automaton_gives_classical_sequence(binary_seq):
    for n in range(256):
        bits = bin(n)[2:][::-1] if n else ""
        classical = sum((Fraction(int(bit), 2 ** (i + 1)) for i, bit in enumerate(bits)), Fraction(0))
        assert binary_seq.x(n) == classical


def test_final_example_epsilon_and_tails(final_example, final_data):
    eta = final_data.eta
    u = valued_word(final_example, final_data, parse_ep_word("3,0|2"))
    for k in range(3, 10):
        assert u.epsilon(k) == 2 * eta[4]
        assert u.tail(k) == eta[3] - eta[2] + eta[1]


def test_non_pisot_automaton_is_refused(final_example, final_data):
    with pytest.raises(HypothesisError):
        check_sequence_hypotheses(final_example)
    with pytest.raises(HypothesisError):
        VanDerCorputSequence(final_example, final_data)
