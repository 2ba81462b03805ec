"""Integer/rational polynomial helpers (coefficient lists run from x^0 upwards)."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

import sympy

from app.errors import UsageError

X = sympy.Symbol("x")

Coefficients = Sequence[int | Fraction]


def to_fraction(value: object) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def to_sympy(coeffs: Coefficients) -> sympy.Poly:
    """Low-to-high coefficients as a sympy polynomial over QQ."""
    terms = [sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(coeffs)]
    return sympy.Poly(terms, X, domain=sympy.QQ)


def from_sympy(poly: sympy.Poly) -> List[Fraction]:
    return [to_fraction(c) for c in reversed(poly.all_coeffs())]


def integer_coefficients(poly: sympy.Poly) -> Tuple[int, ...]:
    coeffs = from_sympy(poly)
    if any(c.denominator != 1 for c in coeffs):
        raise ValueError(f"polynomial {poly.as_expr()} is not integral")
    return tuple(int(c) for c in coeffs)


def evaluate(coeffs: Coefficients, point: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * point + c
    return total


def factor_integer(coeffs: Sequence[int]) -> List[Tuple[Tuple[int, ...], int]]:
    """Irreducible factors over Q with multiplicities, each as primitive integer coefficients."""
    poly = sympy.Poly(list(reversed(coeffs)), X, domain=sympy.ZZ)
    _, factors = poly.factor_list()
    return [(integer_coefficients(factor), multiplicity) for factor, multiplicity in factors]


def is_irreducible(coeffs: Sequence[int]) -> bool:
    if len(coeffs) <= 2:
        return len(coeffs) == 2
    return bool(sympy.Poly(list(reversed(coeffs)), X, domain=sympy.ZZ).is_irreducible)


def parse_polynomial(text: str) -> Tuple[int, ...]:
    """Parse space separated integer coefficients from constant to leading term."""
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise UsageError("empty polynomial")
    try:
        coeffs = tuple(int(token) for token in tokens)
    except ValueError as exc:
        raise UsageError(f"polynomial coefficients must be integers: {text!r}") from exc
    if len(coeffs) < 2:
        raise UsageError("polynomial must have degree at least 1")
    if coeffs[-1] != 1:
        raise UsageError(f"polynomial must be monic, leading coefficient is {coeffs[-1]}")
    return coeffs


def format_polynomial(coeffs: Coefficients, var: str = "x") -> str:
    """Render as e.g. ``x^3-2x^2-x+1``; non-integral coefficients appear as ``(p/q)``."""
    parts: List[str] = []
    for degree in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[degree])
        if c == 0:
            continue
        magnitude = abs(c)
        if magnitude.denominator == 1:
            number = str(magnitude.numerator)
        elif degree == 0:
            number = f"{magnitude.numerator}/{magnitude.denominator}"
        else:
            number = f"({magnitude.numerator}/{magnitude.denominator})"
        if degree == 0:
            term = number
        else:
            monomial = var if degree == 1 else f"{var}^{degree}"
            term = monomial if magnitude == 1 else number + monomial
        if c < 0:
            parts.append("-" + term)
        else:
            parts.append(("+" if parts else "") + term)
    return "".join(parts) if parts else "0"
