"""Characteristic polynomials, Perron eigen-data and the ζ forms."""
from app.spectral.eigen import SpectralData, count_L_by_trace, spectral_data, verify_spectral_data, zeta
from app.spectral.matrices import charpoly, is_pisot_automaton, is_primitive

__all__ = [
    "SpectralData",
    "charpoly",
    "count_L_by_trace",
    "is_pisot_automaton",
    "is_primitive",
    "spectral_data",
    "verify_spectral_data",
    "zeta",
]
