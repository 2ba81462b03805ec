"""Empirical growth of |D(N, [0, y))| used to cross-check exact verdicts."""
from __future__ import annotations

from typing import List

import numpy as np
import orjson
import structlog
from pydantic import BaseModel

from app.algebra.field import FieldElement
from app.discrepancy.counting import DEFAULT_BRUTE_CAP, check_brute_cap
from app.discrepancy.sweep import sweep_rows
from app.sequence.values import VanDerCorputSequence
from app.settings import BrsSection

logger = structlog.get_logger(__name__)


class GrowthCheckpoint(BaseModel):
    N: int
    max_abs_D: float


class EmpiricalReport(BaseModel):
    """Running maxima of |D| at dyadic N and the least-squares slope against log N."""

    n_max: int
    y: str
    checkpoints: List[GrowthCheckpoint]
    max_abs_D: float
    argmax_N: int
    slope: float
    looks_bounded: bool

    def to_json(self) -> bytes:
        return orjson.dumps(self.model_dump(), option=orjson.OPT_INDENT_2)


def _dyadic(n_max: int) -> List[int]:
    marks = []
    N = 2
    while N <= n_max:
        marks.append(N)
        N *= 2
    if n_max >= 2 and marks[-1] != n_max:
        marks.append(n_max)
    return marks


def growth_slope(checkpoints: List[GrowthCheckpoint], fit_min_n: int) -> float:
    selected = [point for point in checkpoints if point.N >= fit_min_n]
    if len(selected) < 3:
        selected = checkpoints
    if len(selected) < 2:
        return 0.0
    xs = np.log(np.array([point.N for point in selected], dtype=float))
    ys = np.array([point.max_abs_D for point in selected], dtype=float)
    slope, _intercept = np.polyfit(xs, ys, 1)
    return float(slope)


def empirical_check(
    seq: VanDerCorputSequence,
    y: FieldElement,
    n_max: int,
    *,
    cap: int = DEFAULT_BRUTE_CAP,
    options: BrsSection | None = None,
) -> EmpiricalReport:
    options = options or BrsSection()
    check_brute_cap(n_max, cap)
    marks = set(_dyadic(n_max))
    running = 0.0
    argmax = 0
    checkpoints: List[GrowthCheckpoint] = []
    for point in sweep_rows(seq, y, n_max):
        magnitude = abs(float(point.D))
        if magnitude > running:
            running, argmax = magnitude, point.N
        if point.N in marks:
            checkpoints.append(GrowthCheckpoint(N=point.N, max_abs_D=running))
    slope = growth_slope(checkpoints, options.fit_min_n)
    report = EmpiricalReport(
        n_max=n_max,
        y=y.format(),
        checkpoints=checkpoints,
        max_abs_D=running,
        argmax_N=argmax,
        slope=slope,
        looks_bounded=slope < options.slope_threshold,
    )
    logger.info(
        "empirical_check_done",
        n_max=n_max,
        max_abs_D=round(running, 6),
        argmax_N=argmax,
        slope=round(slope, 6),
    )
    return report
