"""Abstract numeration systems: counts, ranks and the pruned mirror system."""
from app.numeration.counting import PathCounter, count_L, count_words, path_counter
from app.numeration.shortlex import (
    ShortlexSystem,
    iter_words,
    lprime_rank,
    lprime_unrank,
    rank,
    unrank,
    valomega_ratio,
)

__all__ = [
    "PathCounter",
    "ShortlexSystem",
    "count_L",
    "count_words",
    "iter_words",
    "lprime_rank",
    "lprime_unrank",
    "path_counter",
    "rank",
    "unrank",
    "valomega_ratio",
]
