"""Figure specifications: which CSVs feed each figure kind, and strict
schema validation of their headers and payloads.

The run manifest (JSON written by the simulation CLI) is the single source
of derived scales: coupling-bound markers and the frequency scale are read
from it, never recomputed here.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field

KINDS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7")

# command stem and column schema per figure kind
KIND_SOURCES = {
    "fig1": ("propagators", ["t_s", "t_omega0", "G1", "G2", "method"]),
    "fig2": ("diffusion-sweep", ["eta", "D_m2_per_s2", "regime"]),
    "fig3": ("energy", ["t_s", "E_J"]),
    "fig4": ("propagators", ["t_s", "t_omega0", "G1", "G2", "method"]),
    "fig5": ("squeezing", ["T_K", "T_scaled", "dx_scaled", "dp_scaled",
                            "equipartition_ref"]),
    "fig6": ("non-markov", ["eta", "N_scaled"]),
    "fig7": ("j-distance", ["T_scaled", "JD"]),
}

KIND_DIMENSIONS = {
    "fig6": (1, 2),     # headline backflow comparison
}
DEFAULT_DIMENSIONS = (1, 2, 3)


class SchemaError(ValueError):
    """Input CSV or manifest does not match the expected schema."""


@dataclass(frozen=True)
class FigureSpec:
    """One figure to render: kind, per-dimension inputs, output path."""

    kind: str
    csv_paths: dict[int, str]
    output: str
    eta_c: dict[int, float] = field(default_factory=dict)
    omega0: float | None = None
    log_x: bool = False
    log_y: bool = False

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise SchemaError(f"unknown figure kind {self.kind!r}")
        if not self.csv_paths:
            raise SchemaError(f"{self.kind}: no input CSVs resolved")
        for d, path in self.csv_paths.items():
            if not os.path.exists(path):
                raise SchemaError(f"{self.kind}: missing input {path}")


@dataclass(frozen=True)
class Table:
    columns: list[str]
    rows: list[list]


def read_table(path: str, expected_columns: list[str]) -> Table:
    """Load one CSV and enforce its schema: exact header, nonempty numeric
    payload (the trailing 'method'/'regime' tag columns stay as strings)."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file") from None
        if header != expected_columns:
            raise SchemaError(
                f"{path}: header {header!r} does not match schema {expected_columns!r}")
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            if len(raw) != len(header):
                raise SchemaError(f"{path}:{lineno}: expected {len(header)} cells")
            row = []
            for name, cell in zip(header, raw):
                if name in ("method", "regime"):
                    row.append(cell)
                else:
                    try:
                        row.append(float(cell))
                    except ValueError:
                        raise SchemaError(
                            f"{path}:{lineno}: non-numeric value {cell!r} in {name}") from None
            rows.append(row)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return Table(columns=expected_columns, rows=rows)


def column(table: Table, name: str) -> list:
    idx = table.columns.index(name)
    return [row[idx] for row in table.rows]


def load_manifest(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            manifest = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read manifest {path}: {exc}") from exc
    for key in ("derived", "frohlich", "files"):
        if key not in manifest:
            raise SchemaError(f"manifest {path} lacks the {key!r} block")
    return manifest


def spec_from_manifest(manifest_path: str, kind: str, out_dir: str) -> FigureSpec:
    """Resolve one figure's inputs against a run manifest.

    CSV paths come from the manifest's files block when recorded there and
    fall back to the conventional <command>_d<d>.csv names next to the
    manifest.
    """
    manifest = load_manifest(manifest_path)
    base = os.path.dirname(os.path.abspath(manifest_path))
    command, _ = KIND_SOURCES[kind]
    dims = KIND_DIMENSIONS.get(kind, DEFAULT_DIMENSIONS)
    paths = {}
    for d in dims:
        key = f"{command}_d{d}"
        name = manifest["files"].get(key, f"{key}.csv")
        path = os.path.join(base, name)
        if os.path.exists(path):
            paths[d] = path
    if not paths:
        raise SchemaError(
            f"{kind}: manifest {manifest_path} references no {command} CSVs")
    eta_c = {int(d): blk["eta_c"] for d, blk in manifest["derived"].items()}
    omega0 = next(iter(manifest["derived"].values()))["omega0"]
    return FigureSpec(
        kind=kind,
        csv_paths=paths,
        output=os.path.join(out_dir, f"{kind}.png"),
        eta_c=eta_c,
        omega0=omega0,
        log_x=kind == "fig6",
        log_y=kind in ("fig2", "fig6"),
    )
