import pytest

from app.algebra.field import field_new
from app.automaton.ordered import incidence
from app.automaton.words import EPWord
from app.beta.automaton import beta_automaton
from app.beta.expansion import (
    beta_polynomial,
    check_admissibility,
    digits_value,
    has_root,
    quasi_greedy_one,
)
from app.errors import CapExceededError, HypothesisError
from app.spectral.matrices import charpoly


@pytest.mark.parametrize(
    "minpoly, text, polynomial",
    [
        ((-2, 0, -4, 1), "(401)^ω", (-2, 0, -4, 1)),
        ((-1, -1, 1), "(10)^ω", (-1, -1, 1)),
        ((-2, 1), "(1)^ω", (-2, 1)),
        ((-3, 1), "(2)^ω", (-3, 1)),
    ],
)
def test_quasi_greedy_expansions(minpoly, text, polynomial):
    field = field_new(minpoly)
    expansion = quasi_greedy_one(field)
    assert str(expansion) == text
    assert expansion.value_check()
    assert check_admissibility(expansion.t)
    assert beta_polynomial(expansion) == polynomial
    assert has_root(beta_polynomial(expansion), field)


def test_beta_automaton_rebuilds_known_tables(example2, golden, binary):
    cases = [((-2, 0, -4, 1), example2), ((-1, -1, 1), golden), ((-2, 1), binary)]
    for minpoly, expected in cases:
        built = beta_automaton(quasi_greedy_one(field_new(minpoly)))
        assert built.rows() == expected.rows()


def test_beta_automaton_charpoly_is_beta_polynomial():
    expansion = quasi_greedy_one(field_new((-2, 0, -4, 1)))
    built = beta_automaton(expansion)
    assert charpoly(incidence(built)) == beta_polynomial(expansion)


def test_digits_value_of_periodic_word():
    field = field_new((-1, -1, 1))
    assert digits_value(field, EPWord((), (1, 0))) == 1
    assert digits_value(field, EPWord((1,), (0,))) == field.beta.inverse()


def test_admissibility_rules():
    assert check_admissibility(EPWord((), (4, 0, 1)))
    assert not check_admissibility(EPWord((), (0, 1, 4)))
    assert not check_admissibility(EPWord((2, 1), (0,)))


def test_non_pisot_base_is_refused():
    with pytest.raises(HypothesisError):
        quasi_greedy_one(field_new((-11, 15, -7, 1)))


def test_remainder_cap():
    with pytest.raises(CapExceededError):
        quasi_greedy_one(field_new((-2, 0, -4, 1)), remainder_cap=2)
