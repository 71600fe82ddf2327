"""Preset layouts keyed by the sweep CSV preset names."""

from __future__ import annotations

from pathlib import Path

from .reader import SchemaError
from .render import PlotSpec, render

#: preset -> ((csv name, value column) per panel, kind, one sheet or per-panel)
_LAYOUTS: dict[str, tuple[tuple[tuple[str, str], ...], str, bool]] = {
    # four stationary panels on one sheet: concurrence and generator
    # measure for each phase choice
    "fig2": (
        (
            ("fig2a.csv", "concurrence"),
            ("fig2b.csv", "e_over_m"),
            ("fig2c.csv", "concurrence"),
            ("fig2d.csv", "e_over_m"),
        ),
        "heatmap",
        True,
    ),
    "fig3": ((("fig3.csv", "e_over_m"),), "lines", True),
    "fig4": ((("fig4a.csv", "e_over_m"), ("fig4b.csv", "e_over_m")), "lines", False),
    "fig5": ((("fig5a.csv", "e_over_m"), ("fig5b.csv", "e_over_m")), "lines", False),
    "fig6": ((("fig6a.csv", "e_over_m"), ("fig6b.csv", "e_over_m")), "heatmap", False),
    "fig7": ((("fig7a.csv", "e_over_m"), ("fig7b.csv", "e_over_m")), "heatmap", False),
    "fig8": ((("fig8a.csv", "e_over_m"), ("fig8b.csv", "e_over_m")), "lines", False),
    "fig9": ((("fig9a.csv", "e_over_m"), ("fig9b.csv", "e_over_m")), "heatmap", False),
    "fig10": ((("fig10a.csv", "e_over_m"), ("fig10b.csv", "e_over_m")), "heatmap", False),
}


def render_preset(name: str, data_dir: str | Path, out_dir: str | Path,
                  image_format: str = "svg") -> list[Path]:
    """Render one preset from CSVs in ``data_dir`` into ``out_dir``."""
    if name not in _LAYOUTS:
        raise SchemaError(f"unknown preset {name!r} (known: {sorted(_LAYOUTS)})")
    panels, kind, one_sheet = _LAYOUTS[name]
    data_dir = Path(data_dir)
    out_dir = Path(out_dir)

    if one_sheet:
        return [render(PlotSpec(
            inputs=tuple(str(data_dir / f) for f, _ in panels),
            kind=kind,
            values=tuple(v for _, v in panels),
            output=str(out_dir / f"{name}.{image_format}"),
            title=name,
        ))]
    written = []
    for fname, value in panels:
        written.append(render(PlotSpec(
            inputs=(str(data_dir / fname),),
            kind=kind,
            value=value,
            output=str(out_dir / f"{Path(fname).stem}.{image_format}"),
            title=Path(fname).stem,
        )))
    return written
