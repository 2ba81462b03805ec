import os
from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from app.algebra.roots import classify_roots, is_pisot_polynomial
from app.automaton.ordered import OrderedAutomaton, incidence, mirror
from app.errors import PrimitivityError, ReducibleCharpolyError
from app.numeration.counting import count_L
from app.spectral.eigen import count_L_by_trace, spectral_data, zeta
from app.spectral.matrices import charpoly, is_pisot_automaton, is_primitive

SLOW = os.environ.get("AVDC_SLOW") == "1"


@pytest.mark.parametrize(
    "coeffs, pisot",
    [
        ((-1, -1, 1), True),
        ((-2, 1), True),
        ((1, -1, -2, 1), True),
        ((-2, 0, -4, 1), True),
        ((-2, 0, 1), False),
        ((1, -1, -1, -1, 1), False),
        ((-11, 15, -7, 1), False),
        ((0, -11, 15, -7, 1), False),
    ],
)
def test_pisot_classification(coeffs, pisot):
    assert is_pisot_polynomial(coeffs) is pisot


def test_census_counts_large_roots():
    census = classify_roots((-2, 0, 1))
    assert census.large == 2
    assert census.real_above_one == 1


def test_charpolys(example1, example2, final_example):
    assert charpoly(incidence(example1)) == (1, -1, -2, 1)
    assert charpoly(incidence(mirror(example1))) == (1, -1, -2, 1)
    assert charpoly(incidence(example2)) == (-2, 0, -4, 1)
    assert charpoly(incidence(final_example)) == (0, -11, 15, -7, 1)


def test_primitivity(example1):
    assert is_primitive(incidence(example1))
    assert not is_primitive(((0, 1), (1, 0)))


def test_pisot_automata(example1, example2, golden, final_example):
    assert is_pisot_automaton(example1)
    assert is_pisot_automaton(example2)
    assert is_pisot_automaton(golden)
    assert not is_pisot_automaton(final_example)


def test_example1_eigenvector(example1_data):
    beta = example1_data.beta
    eta = example1_data.eta
    assert eta[0] == 0
    assert eta[1] == beta**2 - 2 * beta
    assert eta[2] == -(beta**2) + 3 * beta - 1
    assert eta[3] == 1
    assert eta[1].to_decimal(3) == "0.555"
    assert eta[2].to_decimal(3) == "0.692"


@pytest.mark.parametrize("name", ["example1_data", "example2_data"])
def test_zeta_normalization(name, request):
    data = request.getfixturevalue(name)
    d = data.d
    for q in range(d + 1):
        for r in range(d + 1):
            assert zeta(data, r, data.eta[q]) == Fraction(int(q + r > d))


@pytest.mark.parametrize(
    "aut_name, data_name, k_max",
    [("example1", "example1_data", 8), ("example2", "example2_data", 8 if SLOW else 6)],
)
def test_count_identity(aut_name, data_name, k_max, request):
    aut = request.getfixturevalue(aut_name)
    data = request.getfixturevalue(data_name)
    d = aut.d
    for k in range(k_max + 1):
        for q in range(1, d + 1):
            reached = Counter(aut.step(q, v) for v in product(range(aut.sigma), repeat=k))
            for r in range(1, d + 1):
                brute = sum(n for state, n in reached.items() if state + r > d)
                assert count_L(aut, q, r, k) == brute
                assert count_L_by_trace(data, q, r, k) == brute


def test_reducible_charpoly_is_reported(final_example):
    with pytest.raises(ReducibleCharpolyError) as excinfo:
        spectral_data(final_example)
    assert "x^3-7x^2+15x-11" in str(excinfo.value)


def test_reducible_charpoly_keeps_eta(final_data):
    assert final_data.field.minpoly == (-11, 15, -7, 1)
    assert final_data.theta is None
    assert final_data.eta[4] == 1
    with pytest.raises(ReducibleCharpolyError):
        zeta(final_data, 1, final_data.eta[1])


def test_non_primitive_automaton_is_rejected():
    aut = OrderedAutomaton.from_rows([(1, 0), (2, 2)])
    with pytest.raises(PrimitivityError):
        spectral_data(aut)
