"""Figures from cavitypair sweep CSV files; never recomputes physics."""

from .reader import SchemaError, SweepTable, read_sweep
from .render import PlotSpec, render
from .presets import render_preset

__version__ = "0.1.0"
