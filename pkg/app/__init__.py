"""Abstract numeration systems, van der Corput sequences and their discrepancy."""

__all__ = ["main"]
