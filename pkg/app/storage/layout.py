"""Path helpers for the output tree under the data root."""
from __future__ import annotations

from pathlib import Path

from app.settings import OutputSection


class OutputLayout:
    """Directories the CLI writes on its own: sweep checkpoints and metrics exports.

    CSV and JSON outputs go wherever ``--csv``/``--json`` point.
    """

    def __init__(self, *, checkpoints: Path, metrics: Path) -> None:
        self.checkpoints = checkpoints
        self.metrics = metrics
        for path in (checkpoints, metrics):
            path.mkdir(parents=True, exist_ok=True)

    @classmethod
    def from_settings(cls, output: OutputSection) -> "OutputLayout":
        root = Path(output.data_root)
        return cls(checkpoints=root / output.checkpoints_dir, metrics=root / output.metrics_dir)
