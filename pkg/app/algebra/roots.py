"""Certified counting of roots outside the open unit disk."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

import structlog
import sympy

from app.algebra.polynomials import X, factor_integer, format_polynomial, to_fraction
from app.errors import ConsistencyError

logger = structlog.get_logger(__name__)

MAX_RECTANGLE_ROUNDS = 64


@dataclass(slots=True)
class FactorCensus:
    factor: Tuple[int, ...]
    multiplicity: int
    large: int
    real_above_one: int


@dataclass(slots=True)
class RootCensus:
    """Roots of modulus >= 1 counted with multiplicity.

    ``large`` is exact except for self-reciprocal factors of degree >= 4,
    where it is the lower bound 2 (such a factor already rules out the
    Pisot property).
    """

    large: int = 0
    real_above_one: int = 0
    factors: List[FactorCensus] = field(default_factory=list)

    @property
    def is_pisot(self) -> bool:
        """Exactly one root of modulus >= 1, simple, real and > 1."""
        return self.large == 1 and self.real_above_one == 1


def _rectangle_bounds(low: sympy.Expr, high: sympy.Expr) -> Tuple[Fraction, Fraction]:
    ax, ay = to_fraction(sympy.re(low)), to_fraction(sympy.im(low))
    bx, by = to_fraction(sympy.re(high)), to_fraction(sympy.im(high))
    far = max(ax * ax, bx * bx) + max(ay * ay, by * by)
    dx = Fraction(0) if ax <= 0 <= bx else min(abs(ax), abs(bx))
    dy = Fraction(0) if ay <= 0 <= by else min(abs(ay), abs(by))
    return dx * dx + dy * dy, far


def _complex_large(poly: sympy.Poly, expected: int) -> int:
    if expected == 0:
        return 0
    eps = sympy.Rational(1, 4)
    for _ in range(MAX_RECTANGLE_ROUNDS):
        _, rectangles = poly.intervals(all=True, eps=eps)
        returned = sum(multiplicity for _, multiplicity in rectangles)
        if returned == 0 or expected % returned:
            raise ConsistencyError(
                f"complex isolation of {poly.as_expr()} returned {returned} of {expected} roots"
            )
        large = 0
        undecided = False
        for (low, high), multiplicity in rectangles:
            near, far = _rectangle_bounds(low, high)
            if near > 1:
                large += multiplicity
            elif far >= 1:
                undecided = True
                break
        if not undecided:
            return large * (expected // returned)
        eps = eps / 16
    raise ConsistencyError(f"could not separate the roots of {poly.as_expr()} from the unit circle")


def _factor_census(coeffs: Tuple[int, ...], multiplicity: int) -> FactorCensus:
    degree = len(coeffs) - 1
    if degree == 1:
        root = Fraction(-coeffs[0], coeffs[1])
        return FactorCensus(coeffs, multiplicity, int(abs(root) >= 1), int(root > 1))
    reverse = tuple(reversed(coeffs))
    if reverse == coeffs or reverse == tuple(-c for c in coeffs):
        # self-reciprocal: roots pair up as α, 1/α
        if degree == 2:
            b = coeffs[1] * coeffs[2]
            if b * b > 4:
                return FactorCensus(coeffs, multiplicity, 1, int(b < -2))
            return FactorCensus(coeffs, multiplicity, 2, 0)
        return FactorCensus(coeffs, multiplicity, 2, 0)
    poly = sympy.Poly(list(reverse), X, domain=sympy.QQ)
    real_total = int(poly.count_roots())
    above = int(poly.count_roots(inf=1))
    below = int(poly.count_roots(sup=-1))
    large = above + below + _complex_large(poly, degree - real_total)
    return FactorCensus(coeffs, multiplicity, large, above)


def classify_roots(coeffs: Sequence[int]) -> RootCensus:
    """Count roots of an integer polynomial with modulus >= 1 (certified, exact arithmetic)."""
    census = RootCensus()
    for factor, multiplicity in factor_integer(coeffs):
        if len(factor) < 2:
            continue
        item = _factor_census(factor, multiplicity)
        census.factors.append(item)
        census.large += item.large * multiplicity
        census.real_above_one += item.real_above_one * multiplicity
    logger.debug(
        "root_census",
        polynomial=format_polynomial(coeffs),
        large=census.large,
        real_above_one=census.real_above_one,
    )
    return census


def is_pisot_polynomial(coeffs: Sequence[int]) -> bool:
    return classify_roots(coeffs).is_pisot
