"""Deterministic CSV and manifest writing.

Floats are written with repr (shortest round-trip form), so identical
inputs always produce byte-identical files regardless of thread count.
"""

from __future__ import annotations

import json
import math
import os
from typing import Iterable, Sequence

from .free_dynamics import SeriesOutput


def format_cell(value) -> str:
    if isinstance(value, float):
        value = float(value)  # numpy scalars repr differently
        if not math.isfinite(value):
            raise ValueError(f"refusing to write non-finite value {value!r}")
        return repr(value)
    return str(value)


def write_rows(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """CSV with a fixed header; every numeric cell full precision."""
    lines = [",".join(header)]
    for row in rows:
        if len(row) != len(header):
            raise ValueError("row width does not match header")
        lines.append(",".join(format_cell(cell) for cell in row))
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_series(series: SeriesOutput, path: str,
                 columns: tuple[str, str] = ("t_s", "value")) -> None:
    """Two-column CSV of a SeriesOutput; NaN or inf values are refused."""
    write_rows(path, columns, zip(series.t.tolist(), series.values.tolist()))


def write_manifest(path: str, payload: dict) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
