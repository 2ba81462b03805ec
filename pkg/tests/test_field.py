from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.algebra.field import NumberField, arith, compare, field_new
from app.algebra.polynomials import format_polynomial, parse_polynomial
from app.errors import FieldError, ReducibleCharpolyError, UsageError

CUBIC = (1, -1, -2, 1)  # x^3 - 2x^2 - x + 1
GOLDEN = (-1, -1, 1)

_cubic = NumberField(CUBIC)
_golden = NumberField(GOLDEN)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
cubic_elements = st.lists(rationals, min_size=3, max_size=3).map(_cubic.element)


def test_power_sums_of_example1_root():
    assert [_cubic.power_sum(k) for k in range(4)] == [3, 2, 6, 11]
    assert _cubic.beta.trace() == 2


def test_beta_decimals():
    assert _cubic.beta.to_decimal(6) == "2.246980"
    assert _golden.beta.to_decimal(9) == "1.618033989"


def test_reduction_uses_the_minimal_polynomial():
    beta = _cubic.beta
    assert beta**3 == 2 * beta**2 + beta - 1
    assert (beta**3).coeffs == (Fraction(-1), Fraction(1), Fraction(2))


def test_golden_identities():
    phi = _golden.beta
    assert phi * phi == phi + 1
    assert phi.inverse() == phi - 1
    assert 1 / phi + 1 / phi**2 == 1


def test_ordering_and_floor():
    phi = _golden.beta
    assert phi > Fraction(8, 5)
    assert phi < Fraction(13, 8)
    assert (phi * 10).floor() == 16
    assert (-phi).floor() == -2
    assert compare(phi - 1, phi.inverse()) == "equal"
    assert compare(phi.inverse(), phi) == "less"


def test_to_decimal_never_prints_negative_zero():
    tiny = (_golden.beta - Fraction(1618034, 1000000)) * Fraction(1, 10**6)
    assert tiny.to_decimal(3) == "0.000"


def test_division_by_zero():
    with pytest.raises(FieldError):
        _golden.zero.inverse()


def test_fields_do_not_mix():
    with pytest.raises(FieldError):
        _golden.beta + _cubic.beta


def test_reducible_polynomial_is_rejected():
    with pytest.raises(ReducibleCharpolyError):
        NumberField((0, -11, 15, -7, 1))


def test_root_must_exceed_one():
    with pytest.raises(FieldError):
        NumberField((1, 1))
    with pytest.raises(FieldError):
        NumberField((-1, 1, 1))
    with pytest.raises(FieldError):
        NumberField((1, 0, 1))



def test_integer_base_field():
    field = field_new((-3, 1))
    assert field.degree == 1
    assert field.beta == 3
    assert (field.beta.inverse() * 2).to_decimal(4) == "0.6667"


def test_arith_dispatch():
    a, b = _golden.beta, _golden.one
    assert arith(a, b, "add") == a + 1
    assert arith(a, b, "div") == a
    with pytest.raises(FieldError):
        arith(a, b, "pow")


def test_rational_hash_matches_fraction():
    assert hash(_golden.rational(Fraction(3, 4))) == hash(Fraction(3, 4))
    assert _golden.rational(Fraction(3, 4)) == Fraction(3, 4)


def test_format():
    assert format_polynomial((1, -1, -2, 1)) == "x^3-2x^2-x+1"
    assert format_polynomial((-2, 0, -4, 1)) == "x^3-4x^2-2"
    assert (_cubic.beta**2 - 2 * _cubic.beta).format() == "b^2-2b"
    assert _cubic.element([Fraction(1, 2), 0, 0]).format() == "1/2"


def test_parse_polynomial():
    assert parse_polynomial("1 -1 -2 1") == CUBIC
    with pytest.raises(UsageError):
        parse_polynomial("1 2")
    with pytest.raises(UsageError):
        parse_polynomial("3")


@settings(max_examples=40, deadline=None)
@given(cubic_elements, cubic_elements, cubic_elements)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a - b) + b == a


@settings(max_examples=40, deadline=None)
@given(cubic_elements)
def test_inverse(a):
    if a.is_zero:
        return
    assert a * a.inverse() == 1


@settings(max_examples=40, deadline=None)
@given(cubic_elements, cubic_elements, rationals)
def test_trace_is_linear(a, b, q):
    assert (a + b * q).trace() == a.trace() + q * b.trace()


@settings(max_examples=30, deadline=None)
@given(cubic_elements, cubic_elements)
def test_order_is_consistent_with_floats(a, b):
    if a == b:
        return
    if abs(float(a) - float(b)) > 1e-6:
        assert (a < b) == (float(a) < float(b))
