"""Streaming discrepancy sweeps: incremental, chunked across processes, resumable."""
from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from pathlib import Path
from typing import Callable, Iterator, List, Optional, Tuple

import structlog

from app.algebra.field import FieldElement
from app.automaton.io import dump_automaton
from app.automaton.ordered import OrderedAutomaton
from app.discrepancy.counting import (
    DEFAULT_BRUTE_CAP,
    DiscrepancyPoint,
    StructuredDiscrepancy,
    brute_D,
    check_unit_interval,
)
from app.errors import UsageError
from app.observability.metrics import MetricsRegistry
from app.sequence.values import ValuedWord, VanDerCorputSequence
from app.spectral.eigen import SpectralData
from app.storage.checkpoint import SweepCheckpoint, clear_checkpoint, load_checkpoint, save_checkpoint

logger = structlog.get_logger(__name__)

ChunkMarks = Tuple[List[Tuple[int, int]], int]


def _check_stride(stride: int) -> None:
    if stride < 1:
        raise UsageError(f"stride must be at least 1, got {stride}")


def sweep_key(aut: OrderedAutomaton, y: FieldElement, stride: int) -> str:
    """Digest identifying a sweep so that a checkpoint from another run is ignored."""
    digest = hashlib.sha1()
    digest.update(dump_automaton(aut).encode("utf-8"))
    digest.update(repr(tuple(str(c) for c in y.coeffs)).encode("utf-8"))
    digest.update(f"stride={stride}".encode("utf-8"))
    return digest.hexdigest()


def sweep_rows(
    seq: VanDerCorputSequence,
    y: FieldElement,
    n_max: int,
    stride: int = 1,
    *,
    resume: Optional[SweepCheckpoint] = None,
) -> Iterator[DiscrepancyPoint]:
    """Rows for N = 0, stride, 2·stride, ... up to n_max with one pass over n.

    With ``resume`` the pass starts at ``resume.n_next`` carrying ``resume.count``
    and the row at that index, already emitted by the earlier run, is skipped.
    """
    _check_stride(stride)
    check_unit_interval(y)
    if n_max <= 0:
        return
    N, count = (resume.n_next, resume.count) if resume else (0, 0)
    first = N if resume else -1
    points = seq.iterate(N)
    while N <= n_max:
        if N % stride == 0 and N != first:
            yield DiscrepancyPoint(N=N, count=count, D=count - N * y)
        if N == n_max:
            break
        _, _, x = next(points)
        if x < y:
            count += 1
        N += 1


def _count_chunk(
    aut: OrderedAutomaton, data: SpectralData, y: FieldElement, lo: int, hi: int, stride: int
) -> ChunkMarks:
    """Hits among x_lo, ..., x_{hi-1}, with the running local count at every row boundary."""
    seq = VanDerCorputSequence(aut, data, require_pisot=False)
    local = 0
    marks: List[Tuple[int, int]] = []
    for n, _, x in islice(seq.iterate(lo), hi - lo):
        if x < y:
            local += 1
        if (n + 1) % stride == 0:
            marks.append((n + 1, local))
    return marks, local


def chunk_bounds(n_max: int, jobs: int) -> List[Tuple[int, int]]:
    size = -(-n_max // jobs)
    return [(lo, min(lo + size, n_max)) for lo in range(0, n_max, size)]


def parallel_sweep_rows(
    seq: VanDerCorputSequence, y: FieldElement, n_max: int, stride: int = 1, *, jobs: int = 2
) -> Iterator[DiscrepancyPoint]:
    """Same rows as :func:`sweep_rows`, with chunk counts computed in worker processes."""
    _check_stride(stride)
    check_unit_interval(y)
    if jobs < 1:
        raise UsageError(f"jobs must be at least 1, got {jobs}")
    if n_max <= 0:
        return
    bounds = chunk_bounds(n_max, jobs)
    yield DiscrepancyPoint(N=0, count=0, D=y.field.zero)
    offset = 0
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(_count_chunk, seq.aut, seq.data, y, lo, hi, stride) for lo, hi in bounds
        ]
        for (lo, hi), future in zip(bounds, futures):
            marks, local = future.result()
            logger.debug("sweep_chunk_merged", lo=lo, hi=hi, hits=local)
            for N, partial in marks:
                count = offset + partial
                yield DiscrepancyPoint(N=N, count=count, D=count - N * y)
            offset += local


def resumable_sweep_rows(
    seq: VanDerCorputSequence,
    y: FieldElement,
    n_max: int,
    stride: int,
    *,
    checkpoint_root: Path,
    every: int = 10_000,
    before_save: Optional[Callable[[], None]] = None,
    metrics: Optional[MetricsRegistry] = None,
) -> Iterator[DiscrepancyPoint]:
    """Sequential sweep that saves its progress every ``every`` rows and clears it on completion.

    ``before_save`` runs ahead of every checkpoint write so that a caller can
    flush the rows the checkpoint claims are done.
    """
    key = sweep_key(seq.aut, y, stride)
    resume = load_checkpoint(checkpoint_root, key)
    if resume is not None:
        logger.info("sweep_resumed", n_next=resume.n_next, count=resume.count)
    emitted = 0
    for point in sweep_rows(seq, y, n_max, stride, resume=resume):
        yield point
        emitted += 1
        if emitted % every == 0:
            if before_save is not None:
                before_save()
            save_checkpoint(checkpoint_root, SweepCheckpoint(key=key, n_next=point.N, count=point.count))
            logger.info("sweep_progress", N=point.N, count=point.count)
            if metrics is not None:
                metrics.incr("checkpoints_saved")
    clear_checkpoint(checkpoint_root, key)


@dataclass(frozen=True, slots=True)
class JointRow:
    """Brute count beside the structured count and the principal term for one N."""

    N: int
    count: int
    D: FieldElement
    structured_count: int
    correction: int
    principal: Fraction

    @property
    def gap(self) -> FieldElement:
        return self.D - self.principal


def joint_rows(
    seq: VanDerCorputSequence, u: ValuedWord, n_max: int, stride: int = 1
) -> Iterator[JointRow]:
    """Brute and counting-formula evaluations side by side for y = ⟨u⟩."""
    structured = StructuredDiscrepancy(seq, u)
    for point in sweep_rows(seq, u.value, n_max, stride):
        parts = structured.parts(point.N)
        yield JointRow(
            N=point.N,
            count=point.count,
            D=point.D,
            structured_count=parts.structured_count,
            correction=parts.correction,
            principal=parts.principal,
        )


def discrepancy_parts(
    seq: VanDerCorputSequence, N: int, u: ValuedWord, *, cap: int = DEFAULT_BRUTE_CAP
) -> JointRow:
    """One-shot :class:`JointRow` for a single N."""
    point = brute_D(seq, N, u.value, cap=cap)
    parts = StructuredDiscrepancy(seq, u).parts(N)
    return JointRow(
        N=N,
        count=point.count,
        D=point.D,
        structured_count=parts.structured_count,
        correction=parts.correction,
        principal=parts.principal,
    )
