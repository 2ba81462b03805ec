"""Discrepancy function D(N, [0, y)) by enumeration and by counting formulas."""
from app.discrepancy.counting import (
    DiscrepancyParts,
    DiscrepancyPoint,
    StructuredDiscrepancy,
    brute_D,
    check_unit_interval,
    correction_C,
    gamma,
    principal_D,
    structured_count,
)
from app.discrepancy.sweep import (
    JointRow,
    chunk_bounds,
    discrepancy_parts,
    joint_rows,
    parallel_sweep_rows,
    resumable_sweep_rows,
    sweep_key,
    sweep_rows,
)

__all__ = [
    "DiscrepancyParts",
    "DiscrepancyPoint",
    "JointRow",
    "StructuredDiscrepancy",
    "brute_D",
    "check_unit_interval",
    "chunk_bounds",
    "correction_C",
    "discrepancy_parts",
    "gamma",
    "joint_rows",
    "parallel_sweep_rows",
    "principal_D",
    "resumable_sweep_rows",
    "structured_count",
    "sweep_key",
    "sweep_rows",
]
