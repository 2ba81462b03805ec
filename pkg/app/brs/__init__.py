"""Bounded remainder set criteria and their empirical cross-check."""
from app.brs.criteria import BrsVerdict, MonotoneProfile, Witness, prop5_check, thm2_decide, verify_witness
from app.brs.empirical import EmpiricalReport, GrowthCheckpoint, empirical_check, growth_slope

__all__ = [
    "BrsVerdict",
    "EmpiricalReport",
    "GrowthCheckpoint",
    "MonotoneProfile",
    "Witness",
    "empirical_check",
    "growth_slope",
    "prop5_check",
    "thm2_decide",
    "verify_witness",
]
