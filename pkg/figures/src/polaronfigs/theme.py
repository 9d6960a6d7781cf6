"""Single source of plot styling: per-dimension line styles, sizes, fonts.

Caption conventions: solid / dashed / dotted curves for d = 1 / 2 / 3,
dark dashed overlays for analytic asymptotes, thin vertical lines for
coupling bounds.  Everything is pinned so repeated renders are
byte-identical.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

DIM_STYLE = {
    1: dict(color="#1f77b4", linestyle="-", label="d = 1"),
    2: dict(color="#d62728", linestyle="--", label="d = 2"),
    3: dict(color="#2ca02c", linestyle=":", label="d = 3"),
}

ASYMPTOTE_STYLE = dict(color="#222222", linestyle="--", linewidth=1.0)
BOUND_LINE_STYLE = {
    1: dict(color="#1f77b4", linestyle="-", linewidth=0.8, alpha=0.7),
    2: dict(color="#d62728", linestyle="--", linewidth=0.8, alpha=0.7),
    3: dict(color="#2ca02c", linestyle=":", linewidth=0.8, alpha=0.7),
}
REFERENCE_STYLE = dict(color="#555555", linestyle="-.", linewidth=1.0)

FIGSIZE_SINGLE = (4.6, 3.4)
FIGSIZE_WIDE = (10.5, 3.2)
FIGSIZE_STACK = (4.6, 5.6)
DPI = 160

RC_PARAMS = {
    "font.family": "DejaVu Sans",
    "font.size": 9.0,
    "axes.linewidth": 0.8,
    "lines.linewidth": 1.4,
    "legend.frameon": False,
    "figure.autolayout": False,
    "svg.hashsalt": "polaron-figures",
}


def styled_figure(kind: str):
    """New figure + axes array under the pinned rc parameters."""
    plt.rcdefaults()
    plt.rcParams.update(RC_PARAMS)
    if kind in ("fig3", "fig5"):
        fig, axes = plt.subplots(1, 3, figsize=FIGSIZE_WIDE, sharey=False)
        return fig, list(axes)
    if kind == "fig4":
        fig, axes = plt.subplots(2, 1, figsize=FIGSIZE_STACK, sharex=True)
        return fig, list(axes)
    fig, ax = plt.subplots(figsize=FIGSIZE_SINGLE)
    return fig, [ax]
