"""Perron eigen-data η, ξ, θ of a primitive automaton and the linear forms ζ_r."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import structlog

from app.algebra.field import FieldElement, NumberField
from app.algebra.polynomials import factor_integer, format_polynomial, to_sympy
from app.automaton.ordered import OrderedAutomaton, incidence, mirror
from app.errors import ConsistencyError, PrimitivityError, ReducibleCharpolyError
from app.settings import AlgebraSection
from app.spectral.matrices import charpoly, is_primitive

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, slots=True)
class SpectralData:
    """β, the right eigenvector η (η₀ = 0, η_d = 1), the left eigenvector ξ and θ.

    ``theta`` is ``None`` when the characteristic polynomial is reducible; the
    field is then generated by the factor that carries the Perron root.
    """

    field: NumberField
    charpoly: Tuple[int, ...]
    eta: Tuple[FieldElement, ...]
    xi: Tuple[FieldElement, ...]
    theta: Optional[Tuple[FieldElement, ...]]

    @property
    def d(self) -> int:
        return len(self.eta) - 1

    @property
    def beta(self) -> FieldElement:
        return self.field.beta

    @property
    def irreducible(self) -> bool:
        return self.theta is not None

    def require_theta(self) -> Tuple[FieldElement, ...]:
        if self.theta is None:
            raise ReducibleCharpolyError(
                f"characteristic polynomial {format_polynomial(self.charpoly)} is reducible "
                f"({factorization_text(self.charpoly)}); the zeta forms are unavailable"
            )
        return self.theta


def factorization_text(coeffs: Sequence[int]) -> str:
    parts = []
    for factor, multiplicity in factor_integer(coeffs):
        text = f"({format_polynomial(factor)})"
        parts.append(text if multiplicity == 1 else f"{text}^{multiplicity}")
    return "".join(parts)


def _perron_factor(coeffs: Tuple[int, ...]) -> Tuple[int, ...]:
    intervals = to_sympy(coeffs).intervals()
    (lo, hi), _ = max(intervals, key=lambda item: item[0][0])
    for factor, _ in factor_integer(coeffs):
        poly = to_sympy(factor)
        if poly.degree() >= 1 and poly.count_roots(inf=lo, sup=hi) > 0:
            return factor
    raise ConsistencyError(f"no factor of {format_polynomial(coeffs)} carries its largest root")


def _pinned_kernel(rows: List[List[FieldElement]], pinned: int) -> List[FieldElement]:
    """Solve rows · x = 0 with x[pinned] = 1 by Gauss-Jordan elimination."""
    size = len(rows[0])
    free = [j for j in range(size) if j != pinned]
    work = [[row[j] for j in free] + [-row[pinned]] for row in rows]
    lead = 0
    for col in range(len(free)):
        pick = next((r for r in range(lead, len(work)) if not work[r][col].is_zero), None)
        if pick is None:
            raise ConsistencyError("eigenvector is not determined by the pinned coordinate")
        work[lead], work[pick] = work[pick], work[lead]
        scale = work[lead][col].inverse()
        work[lead] = [value * scale for value in work[lead]]
        for r in range(len(work)):
            if r != lead and not work[r][col].is_zero:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[lead])]
        lead += 1
    if any(not work[r][-1].is_zero for r in range(lead, len(work))):
        raise ConsistencyError("eigen system is inconsistent")
    one = rows[0][0].field.one
    solved = {free[c]: work[c][-1] for c in range(len(free))}
    return [solved.get(j, one) for j in range(size)]


def _shifted(matrix: Sequence[Sequence[int]], beta: FieldElement) -> List[List[FieldElement]]:
    field = beta.field
    return [
        [field.rational(value) - (beta if q == r else 0) for r, value in enumerate(row)]
        for q, row in enumerate(matrix)
    ]


def spectral_data(
    aut: OrderedAutomaton,
    *,
    allow_reducible: bool = False,
    algebra: AlgebraSection | None = None,
) -> SpectralData:
    """Exact Perron data; θ and the ζ normalization are verified before returning."""
    algebra = algebra or AlgebraSection()
    matrix = incidence(aut)
    if not is_primitive(matrix):
        raise PrimitivityError("incidence matrix of the automaton is not primitive")
    poly = charpoly(matrix)
    factors = factor_integer(poly)
    irreducible = len(factors) == 1 and factors[0][1] == 1
    if not irreducible and not allow_reducible:
        raise ReducibleCharpolyError(
            f"characteristic polynomial {format_polynomial(poly)} is reducible: {factorization_text(poly)}"
        )
    minpoly = poly if irreducible else _perron_factor(poly)
    field = NumberField(
        minpoly,
        assume_irreducible=True,
        precision_bits=algebra.initial_precision_bits,
        max_refinements=algebra.max_refinements,
    )
    beta = field.beta
    d = aut.d
    shifted = _shifted(matrix, beta)
    eta_tail = _pinned_kernel(shifted, d - 1)
    transposed = [list(column) for column in zip(*shifted)]
    xi_raw = _pinned_kernel(transposed, d - 1)
    norm = sum((x * e for x, e in zip(xi_raw, eta_tail)), field.zero)
    xi = tuple(x / norm for x in xi_raw)
    eta = (field.zero,) + tuple(eta_tail)
    theta: Optional[Tuple[FieldElement, ...]] = None
    if irreducible:
        theta = tuple(
            sum((xi[s - 1] for s in range(d - r + 1, d + 1)), field.zero) for r in range(d + 1)
        )
    data = SpectralData(field=field, charpoly=poly, eta=eta, xi=xi, theta=theta)
    verify_spectral_data(aut, data)
    logger.info(
        "spectral_data_ready",
        charpoly=format_polynomial(poly),
        irreducible=irreducible,
        beta=field.beta.to_decimal(6),
    )
    return data


def verify_spectral_data(aut: OrderedAutomaton, data: SpectralData) -> None:
    """Check M η = β η, and when θ exists M̃ θ = β θ and ζ_r(η_q) = [q + r > d]."""
    d = aut.d
    beta = data.beta
    matrix = incidence(aut)
    for q in range(1, d + 1):
        lhs = sum((data.eta[r] * matrix[q - 1][r - 1] for r in range(1, d + 1)), data.field.zero)
        if lhs != beta * data.eta[q]:
            raise ConsistencyError(f"M η differs from β η in row {q}")
    if data.theta is None:
        return
    mirrored = incidence(mirror(aut))
    for r in range(1, d + 1):
        lhs = sum((data.theta[s] * mirrored[r - 1][s - 1] for s in range(1, d + 1)), data.field.zero)
        if lhs != beta * data.theta[r]:
            raise ConsistencyError(f"mirror incidence times θ differs from β θ in row {r}")
    for q in range(d + 1):
        for r in range(d + 1):
            expected = Fraction(int(q + r > d))
            if zeta(data, r, data.eta[q]) != expected:
                raise ConsistencyError(f"zeta_{r}(eta_{q}) != {expected}")


def zeta(data: SpectralData, r: int, z: FieldElement) -> Fraction:
    """ζ_r(z) = trace(θ_r z)."""
    theta = data.require_theta()
    if r == 0:
        return Fraction(0)
    return (theta[r] * z).trace()


def count_L_by_trace(data: SpectralData, q: int, r: int, k: int) -> Fraction:
    """trace(η_q θ_r β^k)."""
    theta = data.require_theta()
    return (data.eta[q] * theta[r] * data.beta**k).trace()
