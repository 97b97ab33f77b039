"""Delimited time-series output and flat key=value experiment configs.

CSV files carry '#'-prefixed metadata lines echoing the fully resolved
configuration, then a header row, then 17-significant-digit floats so the
output round-trips losslessly and diffs byte for byte between runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

_FLOAT_FMT = "%.17g"


@dataclass
class TimeSeries:
    """Rectangular named-column table with provenance metadata."""

    columns: list[str]
    rows: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        rows = np.atleast_2d(np.asarray(self.rows, dtype=float))
        if rows.shape[1] != len(self.columns):
            raise ValueError(
                f"{len(self.columns)} columns declared but rows have {rows.shape[1]}"
            )
        if not np.all(np.isfinite(rows)):
            raise ValueError("refusing to emit non-finite rows")
        self.rows = rows

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]

    def write_csv(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = [f"# {k} = {v}" for k, v in self.metadata.items()]
        lines.append(",".join(self.columns))
        for row in self.rows:
            lines.append(",".join(_FLOAT_FMT % v for v in row))
        path.write_text("\n".join(lines) + "\n")
        return path


def read_csv(path) -> TimeSeries:
    path = Path(path)
    metadata = {}
    columns = None
    rows = []
    for line in path.read_text().splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                metadata[key.strip()] = value.strip()
            continue
        if columns is None:
            columns = [c.strip() for c in line.split(",")]
            continue
        rows.append([float(v) for v in line.split(",")])
    if columns is None:
        raise ValueError(f"{path} holds no header row")
    return TimeSeries(columns=columns, rows=np.asarray(rows), metadata=metadata)


def parse_config_file(path) -> dict:
    """Flat key = value file; '#' starts a comment."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line without '=': {raw!r}")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def parse_float_list(text) -> list[float]:
    items = [p for chunk in str(text).split(",") for p in chunk.split()]
    values = [float(p) for p in items if p]
    if not values:
        raise ValueError(f"empty list: {text!r}")
    return values
