"""Exact arithmetic in Q(β) for β a real root of an irreducible monic polynomial.

Elements are coefficient vectors over the power basis 1, β, ..., β^(d-1).
Order comparisons evaluate the element on a rational interval around β and
bisect that interval until the sign is certain.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

import structlog
import sympy

from app.algebra.polynomials import evaluate, format_polynomial, is_irreducible, to_fraction, to_sympy
from app.errors import FieldError, ReducibleCharpolyError

logger = structlog.get_logger(__name__)

Rational = int | Fraction


class NumberField:
    """Q(β) with β the largest real root of ``minpoly``, which must exceed 1."""

    def __init__(
        self,
        minpoly: Sequence[int],
        *,
        assume_irreducible: bool = False,
        precision_bits: int = 64,
        max_refinements: int = 4096,
    ) -> None:
        coeffs = tuple(int(c) for c in minpoly)
        if len(coeffs) < 2:
            raise FieldError("minimal polynomial must have degree at least 1")
        if coeffs[-1] != 1:
            raise FieldError(f"minimal polynomial must be monic: {format_polynomial(coeffs)}")
        if not assume_irreducible and not is_irreducible(coeffs):
            raise ReducibleCharpolyError(f"polynomial {format_polynomial(coeffs)} is reducible over Q")
        self.minpoly: Tuple[int, ...] = coeffs
        self.degree = len(coeffs) - 1
        self.max_refinements = max_refinements
        self._lock = threading.Lock()
        self._power_sums: List[Fraction] = [Fraction(self.degree)]
        self._interval = self._isolate_largest_root()
        self._lower_sign = 0 if self._interval[0] == self._interval[1] else self._sign_at(self._interval[0])
        target = Fraction(1, 2**precision_bits)
        while self._interval[1] - self._interval[0] > target:
            self._bisect()
        logger.debug("root_isolated", minpoly=format_polynomial(coeffs), lo=float(self._interval[0]))

    # -- pickling drops the lock; intervals only ever shrink, so sharing copies is safe
    def __getstate__(self) -> Dict[str, Any]:
        state = dict(self.__dict__)
        del state["_lock"]
        return state

    def __setstate__(self, state: Dict[str, Any]) -> None:
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NumberField) and other.minpoly == self.minpoly

    def __hash__(self) -> int:
        return hash(self.minpoly)

    def __repr__(self) -> str:
        return f"NumberField({format_polynomial(self.minpoly)})"

    # -- root isolation -------------------------------------------------------------
    def _sign_at(self, point: Fraction) -> int:
        value = evaluate(self.minpoly, point)
        return (value > 0) - (value < 0)

    def _isolate_largest_root(self) -> Tuple[Fraction, Fraction]:
        if self.degree == 1:
            root = Fraction(-self.minpoly[0])
            if root <= 1:
                raise FieldError(f"root {root} of {format_polynomial(self.minpoly)} is not > 1")
            return root, root
        intervals = to_sympy(self.minpoly).intervals()
        if not intervals:
            raise FieldError(f"{format_polynomial(self.minpoly)} has no real root")
        (lo, hi), _ = max(intervals, key=lambda item: item[0][0])
        lo_f, hi_f = to_fraction(lo), to_fraction(hi)
        if lo_f <= 1 <= hi_f and self._sign_at(Fraction(1)) == 0:
            raise FieldError(f"{format_polynomial(self.minpoly)} vanishes at 1")
        lower_sign = self._sign_at(lo_f)
        while lo_f <= 1 <= hi_f:
            mid = (lo_f + hi_f) / 2
            if self._sign_at(mid) == lower_sign:
                lo_f = mid
            else:
                hi_f = mid
        if hi_f < 1:
            raise FieldError(f"largest real root of {format_polynomial(self.minpoly)} is not > 1")
        return lo_f, hi_f

    def _bisect(self) -> None:
        lo, hi = self._interval
        if lo == hi:
            return
        mid = (lo + hi) / 2
        sign = self._sign_at(mid)
        if sign == 0:
            self._interval = (mid, mid)
        elif sign == self._lower_sign:
            self._interval = (mid, hi)
        else:
            self._interval = (lo, mid)

    def root_interval(self) -> Tuple[Fraction, Fraction]:
        return self._interval

    def refine(self, steps: int = 8) -> None:
        with self._lock:
            for _ in range(steps):
                self._bisect()

    # -- element construction ---------------------------------------------------------
    def element(self, coeffs: Sequence[Rational]) -> "FieldElement":
        return FieldElement(self, self.reduce(coeffs))

    def rational(self, value: Rational) -> "FieldElement":
        return self.element([Fraction(value)])

    @property
    def zero(self) -> "FieldElement":
        return self.rational(0)

    @property
    def one(self) -> "FieldElement":
        return self.rational(1)

    @property
    def beta(self) -> "FieldElement":
        return self.element([0, 1])

    def reduce(self, coeffs: Sequence[Rational]) -> Tuple[Fraction, ...]:
        work = [Fraction(c) for c in coeffs]
        d = self.degree
        for k in range(len(work) - 1, d - 1, -1):
            top = work[k]
            if top:
                for i in range(d):
                    work[k - d + i] -= top * self.minpoly[i]
            work[k] = Fraction(0)
        work.extend([Fraction(0)] * (d - len(work)))
        return tuple(work[:d])

    # -- arithmetic kernels --------------------------------------------------------------
    def multiply(self, left: Sequence[Fraction], right: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        product = [Fraction(0)] * (len(left) + len(right) - 1)
        for i, a in enumerate(left):
            if a:
                for j, b in enumerate(right):
                    if b:
                        product[i + j] += a * b
        return self.reduce(product)

    def inverse(self, coeffs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        if not any(coeffs):
            raise FieldError("division by zero")
        if not any(coeffs[1:]):
            return self.reduce([1 / coeffs[0]])
        try:
            inverted = to_sympy(coeffs).invert(to_sympy(self.minpoly))
        except sympy.polys.polyerrors.NotInvertible as exc:
            raise FieldError(f"element not invertible modulo {format_polynomial(self.minpoly)}") from exc
        return self.reduce([to_fraction(c) for c in reversed(inverted.all_coeffs())])

    def power_sum(self, k: int) -> Fraction:
        """Sum of the k-th powers of all roots of the minimal polynomial (Newton's identities)."""
        c = self.minpoly
        d = self.degree
        sums = self._power_sums
        with self._lock:
            while len(sums) <= k:
                n = len(sums)
                value = Fraction(-n * c[d - n]) if n <= d else Fraction(0)
                for i in range(1, min(n - 1, d) + 1):
                    value -= c[d - i] * sums[n - i]
                sums.append(value)
        return sums[k]

    def trace(self, coeffs: Sequence[Fraction]) -> Fraction:
        return sum((c * self.power_sum(i) for i, c in enumerate(coeffs) if c), Fraction(0))

    # -- certified evaluation ------------------------------------------------------------------
    @staticmethod
    def _enclose(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
        low = high = Fraction(0)
        lo_power = hi_power = Fraction(1)
        for c in coeffs:
            if c > 0:
                low += c * lo_power
                high += c * hi_power
            elif c < 0:
                low += c * hi_power
                high += c * lo_power
            lo_power *= lo
            hi_power *= hi
        return low, high

    def enclose(self, coeffs: Sequence[Fraction]) -> Tuple[Fraction, Fraction]:
        """Rational interval containing the value of the element at β."""
        lo, hi = self.root_interval()
        return self._enclose(coeffs, lo, hi)

    def _settle(self, coeffs: Sequence[Fraction], decided: Any) -> Any:
        for _ in range(self.max_refinements):
            outcome = decided(*self.enclose(coeffs))
            if outcome is not None:
                return outcome
            self.refine()
        raise FieldError(
            f"no decision after {self.max_refinements} refinements of the root of "
            f"{format_polynomial(self.minpoly)}"
        )

    def sign(self, coeffs: Sequence[Fraction]) -> int:
        if not any(coeffs[1:]):
            return (coeffs[0] > 0) - (coeffs[0] < 0)

        def decided(low: Fraction, high: Fraction) -> int | None:
            if low > 0:
                return 1
            if high < 0:
                return -1
            return None

        return int(self._settle(coeffs, decided))

    def floor(self, coeffs: Sequence[Fraction]) -> int:
        if not any(coeffs[1:]):
            return math.floor(coeffs[0])

        def decided(low: Fraction, high: Fraction) -> int | None:
            return math.floor(low) if math.floor(low) == math.floor(high) else None

        return int(self._settle(coeffs, decided))

    def to_decimal(self, coeffs: Sequence[Fraction], digits: int) -> str:
        if not 1 <= digits <= 50:
            raise FieldError(f"digits must lie in 1..50, got {digits}")
        scale = 10**digits
        half = Fraction(1, 2)
        if not any(coeffs[1:]):
            scaled = math.floor(coeffs[0] * scale + half)
        else:

            def decided(low: Fraction, high: Fraction) -> int | None:
                a = math.floor(low * scale + half)
                return a if a == math.floor(high * scale + half) else None

            scaled = int(self._settle(coeffs, decided))
        sign = "-" if scaled < 0 else ""
        whole, fraction = divmod(abs(scaled), scale)
        return f"{sign}{whole}.{fraction:0{digits}d}"


@dataclass(frozen=True, eq=False, slots=True)
class FieldElement:
    """Immutable element of a :class:`NumberField`, always reduced."""

    field: NumberField
    coeffs: Tuple[Fraction, ...]

    def _coerce(self, other: object) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"field mismatch: {self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other: object) -> "FieldElement":
        rhs = self._coerce(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, rhs.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other: object) -> "FieldElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other: object) -> "FieldElement":
        return self._coerce(other) - self

    def __mul__(self, other: object) -> "FieldElement":
        rhs = self._coerce(other)
        return FieldElement(self.field, self.field.multiply(self.coeffs, rhs.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inverse(self.coeffs))

    def __truediv__(self, other: object) -> "FieldElement":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: object) -> "FieldElement":
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        base = self if exponent >= 0 else self.inverse()
        result = self.field.one
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coeffs[0] == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.coeffs[0])
        return hash((self.field.minpoly, self.coeffs))

    def compare(self, other: object) -> int:
        """-1, 0 or 1 according to the real order at β."""
        rhs = self._coerce(other)
        if self.coeffs == rhs.coeffs:
            return 0
        return self.field.sign(tuple(a - b for a, b in zip(self.coeffs, rhs.coeffs)))

    def __lt__(self, other: object) -> bool:
        return self.compare(other) < 0

    def __le__(self, other: object) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: object) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: object) -> bool:
        return self.compare(other) >= 0

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def trace(self) -> Fraction:
        return self.field.trace(self.coeffs)

    def floor(self) -> int:
        return self.field.floor(self.coeffs)

    def to_decimal(self, digits: int = 12) -> str:
        return self.field.to_decimal(self.coeffs, digits)

    def __float__(self) -> float:
        low, high = self.field.enclose(self.coeffs)
        return float((low + high) / 2)

    def format(self, var: str = "b") -> str:
        return format_polynomial(self.coeffs, var)

    def __repr__(self) -> str:
        return f"<{self.format()} in Q(b), b root of {format_polynomial(self.field.minpoly)}>"


def compare(a: FieldElement, b: FieldElement) -> str:
    """Three-way comparison rendered as ``less``, ``equal`` or ``greater``."""
    return ("less", "equal", "greater")[a.compare(b) + 1]


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise FieldError(f"unknown operation {op!r}")


def field_new(minpoly: Sequence[int], *, assume_irreducible: bool = False) -> NumberField:
    return NumberField(minpoly, assume_irreducible=assume_irreducible)
