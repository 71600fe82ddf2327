"""Line plots and annotated heatmaps from sweep tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
matplotlib.rcParams["svg.fonttype"] = "none"  # keep annotations as text

import matplotlib.pyplot as plt

from .reader import SchemaError, SweepTable, read_sweep

KINDS = ("lines", "heatmap")


@dataclass(frozen=True)
class PlotSpec:
    """One rendering job: input tables, plot kind and output image."""

    inputs: tuple[str, ...]
    kind: str
    output: str
    value: str = "e_over_m"
    values: tuple[str, ...] | None = None   # per-input override of ``value``
    xlabel: str | None = None
    ylabel: str | None = None
    title: str | None = None
    reference_extrema: tuple[tuple[float, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"unknown plot kind {self.kind!r} (known: {KINDS})")
        if not self.inputs:
            raise SchemaError("at least one input CSV is required")
        if self.values is not None and len(self.values) != len(self.inputs):
            raise SchemaError("values must match inputs one to one")

    def value_for(self, index: int) -> str:
        return self.values[index] if self.values is not None else self.value


def _line_groups(table: SweepTable, value: str):
    """Split into (label, x, y) curves.

    With a varying time column the curves are keyed by the axis values and
    x is tau; otherwise the last axis is x and earlier axes key the curves.
    """
    tau = table.column("tau")
    y = table.column(value)
    tau_varies = np.isfinite(tau).all() and np.unique(tau).size > 1
    if tau_varies:
        x = tau
        keys = table.axes
    else:
        if not table.axes:
            raise SchemaError(f"{table.path}: nothing varies, cannot draw lines")
        x = table.column(table.axes[-1])
        keys = table.axes[:-1]
    if not keys:
        return [("", x, y)]
    key_cols = np.stack([table.column(k) for k in keys], axis=1)
    groups = []
    for key in dict.fromkeys(map(tuple, key_cols)):  # preserves file order
        mask = np.all(key_cols == np.array(key), axis=1)
        label = ", ".join(f"{k} = {v:g}" for k, v in zip(keys, key))
        groups.append((label, x[mask], y[mask]))
    return groups


def _annotate_max(ax, x: float, y: float, value: float) -> None:
    ax.plot([x], [y], marker="x", markersize=8, color="black", zorder=5)
    ax.annotate(
        f"max {value:.4g} @ ({x:.4g}, {y:.4g})",
        xy=(x, y),
        xytext=(4, 4),
        textcoords="offset points",
        fontsize=8,
        zorder=6,
    )


def _draw_lines(ax, table: SweepTable, value: str) -> None:
    groups = _line_groups(table, value)
    for label, x, y in groups:
        ax.plot(x, y, label=label or None)
        k = int(np.argmax(y))
        _annotate_max(ax, float(x[k]), float(y[k]), float(y[k]))
    if any(lbl for lbl, _, _ in groups):
        ax.legend(fontsize=8)


def _draw_heatmap(ax, fig, table: SweepTable, value: str) -> None:
    if len(table.axes) != 2:
        raise SchemaError(
            f"{table.path}: heatmaps need exactly 2 axes, got {table.axes}"
        )
    a1 = np.unique(table.column(table.axes[0]))
    a2 = np.unique(table.column(table.axes[1]))
    values = table.column(value)
    if values.size != a1.size * a2.size:
        raise SchemaError(f"{table.path}: grid is not a full cartesian product")
    grid = values.reshape(a1.size, a2.size)
    mesh = ax.pcolormesh(a1, a2, grid.T, shading="nearest")
    fig.colorbar(mesh, ax=ax)
    k = int(np.argmax(values))
    _annotate_max(
        ax,
        float(table.column(table.axes[0])[k]),
        float(table.column(table.axes[1])[k]),
        float(values[k]),
    )
    ax.set_xlabel(table.axes[0])
    ax.set_ylabel(table.axes[1])


def render(spec: PlotSpec) -> Path:
    """Render one image from the given spec; returns the written path."""
    tables = [read_sweep(p) for p in spec.inputs]
    n = len(tables)
    if spec.kind == "heatmap" and n > 1:
        ncols = 2
        nrows = (n + 1) // 2
        fig, axes = plt.subplots(nrows, ncols, figsize=(6 * ncols, 4.5 * nrows))
        axes = np.atleast_1d(axes).ravel()
    else:
        fig, ax = plt.subplots(figsize=(7, 5))
        axes = np.array([ax] * n)

    if spec.kind == "lines":
        ax = axes[0]
        for i, table in enumerate(tables):
            _draw_lines(ax, table, spec.value_for(i))
        ax.set_xlabel(spec.xlabel or "tau")
        ax.set_ylabel(spec.ylabel or spec.value)
    else:
        for i, (ax, table) in enumerate(zip(axes, tables)):
            _draw_heatmap(ax, fig, table, spec.value_for(i))
            if spec.xlabel:
                ax.set_xlabel(spec.xlabel)
            if spec.ylabel:
                ax.set_ylabel(spec.ylabel)
        for ax in axes[len(tables):]:
            ax.set_visible(False)

    ax0 = axes[0]
    for x_ref, y_ref in spec.reference_extrema:
        ax0.plot([x_ref], [y_ref], marker="o", mfc="none", color="red", zorder=4)
    if spec.title:
        fig.suptitle(spec.title)

    out = Path(spec.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
    return out
