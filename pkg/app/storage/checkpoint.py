"""Checkpoint utilities for resumable discrepancy sweeps."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

import orjson


@dataclass(slots=True)
class SweepCheckpoint:
    """Progress of a sweep: the first index not yet consumed and the hits before it."""

    key: str
    n_next: int
    count: int


def checkpoint_path(root: Path, key: str) -> Path:
    root.mkdir(parents=True, exist_ok=True)
    return root / f"sweep-{key[:16]}.json"


def load_checkpoint(root: Path, key: str) -> Optional[SweepCheckpoint]:
    path = checkpoint_path(root, key)
    if not path.exists():
        return None
    try:
        checkpoint = SweepCheckpoint(**orjson.loads(path.read_bytes()))
    except (orjson.JSONDecodeError, TypeError):
        return None
    if not isinstance(checkpoint.n_next, int) or not isinstance(checkpoint.count, int):
        return None
    return checkpoint if checkpoint.key == key else None


def save_checkpoint(root: Path, checkpoint: SweepCheckpoint) -> Path:
    path = checkpoint_path(root, checkpoint.key)
    path.write_bytes(orjson.dumps(asdict(checkpoint)))
    return path


def clear_checkpoint(root: Path, key: str) -> None:
    path = checkpoint_path(root, key)
    if path.exists():
        path.unlink()
