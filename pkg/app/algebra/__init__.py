"""Exact arithmetic in Q(β) and certified root counting."""
from app.algebra.field import FieldElement, NumberField, arith, compare, field_new
from app.algebra.polynomials import format_polynomial, parse_polynomial
from app.algebra.roots import RootCensus, classify_roots, is_pisot_polynomial

__all__ = [
    "FieldElement",
    "NumberField",
    "RootCensus",
    "arith",
    "classify_roots",
    "compare",
    "field_new",
    "format_polynomial",
    "is_pisot_polynomial",
    "parse_polynomial",
]
