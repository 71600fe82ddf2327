"""Render sweep CSV files into SVG/PNG figures.

Usage::

    render --spec job.json
    render --preset fig3 [--data-dir DIR] [--out-dir DIR] [--format svg|png]

A spec file is a JSON object with the PlotSpec fields (inputs, kind,
output, optional value/values, labels, title, reference_extrema).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .presets import render_preset
from .reader import SchemaError
from .render import PlotSpec, render


def _spec_from_json(path: Path) -> PlotSpec:
    try:
        payload = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"{path}: cannot read spec ({exc})") from exc
    if not isinstance(payload, dict):
        raise SchemaError(f"{path}: spec must be a JSON object")
    known = {
        "inputs", "kind", "output", "value", "values",
        "xlabel", "ylabel", "title", "reference_extrema",
    }
    unknown = set(payload) - known
    if unknown:
        raise SchemaError(f"{path}: unknown spec fields {sorted(unknown)}")
    for key in ("inputs", "kind", "output"):
        if key not in payload:
            raise SchemaError(f"{path}: missing required field {key!r}")
    payload["inputs"] = tuple(payload["inputs"])
    if "values" in payload and payload["values"] is not None:
        payload["values"] = tuple(payload["values"])
    if "reference_extrema" in payload:
        payload["reference_extrema"] = tuple(
            (float(x), float(y)) for x, y in payload["reference_extrema"]
        )
    return PlotSpec(**payload)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="render", description=__doc__.splitlines()[0])
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--spec", type=Path, help="JSON plot spec")
    group.add_argument("--preset", help="figure preset id, e.g. fig3")
    parser.add_argument("--data-dir", type=Path, default=Path("."),
                        help="directory holding the preset CSV files")
    parser.add_argument("--out-dir", type=Path, default=Path("."))
    parser.add_argument("--format", choices=("svg", "png"), default="svg")
    args = parser.parse_args(argv)

    try:
        if args.spec is not None:
            paths = [render(_spec_from_json(args.spec))]
        else:
            paths = render_preset(args.preset, args.data_dir, args.out_dir,
                                  image_format=args.format)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
