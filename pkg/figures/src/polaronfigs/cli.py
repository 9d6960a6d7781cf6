"""render_figures: regenerate paper-style figures from simulation CSVs.

Usage: render_figures --manifest PATH --kinds fig1,fig2 --out DIR
Exit codes: 0 rendered, 2 schema violation or missing input, 1 other error.
"""

from __future__ import annotations

import argparse
import sys

from .spec import KINDS, SchemaError, spec_from_manifest
from .render import render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="render_figures")
    parser.add_argument("--manifest", required=True, metavar="PATH",
                        help="run_manifest.json written by the simulation CLI")
    parser.add_argument("--kinds", default="all", metavar="LIST",
                        help="comma-separated figure kinds (fig1..fig7) or 'all'")
    parser.add_argument("--out", required=True, metavar="DIR")
    return parser


def parse_kinds(raw: str) -> list[str]:
    if raw.strip().lower() == "all":
        return list(KINDS)
    kinds = [part.strip() for part in raw.split(",") if part.strip()]
    unknown = [k for k in kinds if k not in KINDS]
    if unknown:
        raise SchemaError(f"unknown figure kind(s): {unknown}")
    if not kinds:
        raise SchemaError("no figure kinds requested")
    return kinds


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        kinds = parse_kinds(args.kinds)
        for kind in kinds:
            spec = spec_from_manifest(args.manifest, kind, args.out)
            path = render(spec)
            print(f"rendered {kind} -> {path}")
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"render failure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
