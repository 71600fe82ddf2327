"""Reader for the sweep CSV schema.

A sweep file is comment lines ``# key = value``, one header row, then data
rows.  The trailing seven columns are fixed; anything before them names the
swept axes.  The renderer is a pure CSV-to-image transform and never
recomputes any physics.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

VALUE_COLUMNS = ("tau", "re_c1", "im_c1", "re_c2", "im_c2", "e_over_m", "concurrence")


class SchemaError(ValueError):
    """The file does not follow the sweep CSV schema."""


@dataclass(frozen=True)
class SweepTable:
    path: Path
    meta: dict[str, str]
    axes: tuple[str, ...]
    columns: tuple[str, ...]
    data: np.ndarray          # shape (n_rows, n_columns)

    def column(self, name: str) -> np.ndarray:
        try:
            return self.data[:, self.columns.index(name)]
        except ValueError as exc:
            raise SchemaError(f"{self.path}: no column {name!r}") from exc


def read_sweep(path: str | Path) -> SweepTable:
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"{path}: no such file")
    meta: dict[str, str] = {}
    header: list[str] | None = None
    rows: list[list[float]] = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].partition("=")
                meta[key.strip()] = value.strip()
                continue
            if header is None:
                header = [c.strip() for c in line.split(",")]
                continue
            cells = line.split(",")
            if len(cells) != len(header):
                raise SchemaError(
                    f"{path}:{lineno}: {len(cells)} cells for {len(header)} columns"
                )
            try:
                rows.append([float(c) for c in cells])
            except ValueError as exc:
                raise SchemaError(f"{path}:{lineno}: non-numeric cell") from exc

    if header is None:
        raise SchemaError(f"{path}: empty file")
    if list(header[-len(VALUE_COLUMNS):]) != list(VALUE_COLUMNS):
        raise SchemaError(
            f"{path}: trailing columns must be {VALUE_COLUMNS}, got {tuple(header)}"
        )
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    axes = tuple(header[: len(header) - len(VALUE_COLUMNS)])
    return SweepTable(
        path=path,
        meta=meta,
        axes=axes,
        columns=tuple(header),
        data=np.array(rows, dtype=float),
    )
