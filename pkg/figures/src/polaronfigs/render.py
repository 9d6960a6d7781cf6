"""Per-kind figure renderers.

Each renderer reads validated tables, draws with the shared theme, and
writes a PNG.  Inputs are never modified; identical inputs give
byte-identical files.
"""

from __future__ import annotations

import os

import matplotlib.pyplot as plt
import numpy as np

from .spec import KIND_SOURCES, FigureSpec, SchemaError, Table, column, read_table
from .theme import (ASYMPTOTE_STYLE, BOUND_LINE_STYLE, DIM_STYLE, DPI,
                    REFERENCE_STYLE, styled_figure)


def render(spec: FigureSpec) -> str:
    """Render one figure; returns the written path."""
    _, schema = KIND_SOURCES[spec.kind]
    tables = {d: read_table(path, schema) for d, path in sorted(spec.csv_paths.items())}
    fig, axes = styled_figure(spec.kind)
    try:
        _DRAW[spec.kind](spec, tables, axes)
        for ax in axes:
            if spec.log_x:
                ax.set_xscale("log")
            if spec.log_y:
                ax.set_yscale("log")
        os.makedirs(os.path.dirname(os.path.abspath(spec.output)), exist_ok=True)
        fig.savefig(spec.output, dpi=DPI, format="png",
                    metadata={"Software": "polaron-figures"})
    finally:
        plt.close(fig)
    return spec.output


def _draw_fig1(spec: FigureSpec, tables: dict[int, Table], axes) -> None:
    """Untrapped velocity propagator: Zakian curves with asymptotic overlay."""
    ax = axes[0]
    for d, table in tables.items():
        methods = column(table, "method")
        t_scaled = np.asarray(column(table, "t_omega0"))
        g2 = np.asarray(column(table, "G2"))
        zak = np.array([m == "zakian" for m in methods])
        if not zak.any() or zak.all():
            raise SchemaError(
                f"fig1 needs both zakian and asymptotic rows for d={d}")
        scale = spec.omega0 or 1.0
        ax.plot(t_scaled[zak], scale * g2[zak], **DIM_STYLE[d])
        ax.plot(t_scaled[~zak], scale * g2[~zak], **ASYMPTOTE_STYLE)
    ax.set_xlabel(r"$\omega_0 t$")
    ax.set_ylabel(r"$\omega_0\, G_2(t)$")
    ax.legend(loc="upper left")


def _draw_fig2(spec: FigureSpec, tables: dict[int, Table], axes) -> None:
    """Superdiffusion coefficient vs coupling, with the validity bounds."""
    ax = axes[0]
    for d, table in tables.items():
        ax.plot(column(table, "eta"), column(table, "D_m2_per_s2"), **DIM_STYLE[d])
        if d in spec.eta_c:
            ax.axvline(spec.eta_c[d], **BOUND_LINE_STYLE[d])
    ax.set_xlabel(r"$\eta$")
    ax.set_ylabel(r"$D\ \mathrm{[m^2/s^2]}$")
    ax.legend(loc="lower right")


def _draw_fig3(spec: FigureSpec, tables: dict[int, Table], axes) -> None:
    """Average kinetic energy, one panel per dimension."""
    scale = spec.omega0 or 1.0
    for ax, (d, table) in zip(axes, tables.items()):
        ax.plot(scale * np.asarray(column(table, "t_s")), column(table, "E_J"),
                **DIM_STYLE[d])
        ax.set_xlabel(r"$\omega_0 t$")
        ax.set_title(f"d = {d}", fontsize=9)
    axes[0].set_ylabel(r"$E(t)\ \mathrm{[J]}$")


def _draw_fig4(spec: FigureSpec, tables: dict[int, Table], axes) -> None:
    """Trapped propagators: G1 (top) and G2 (bottom)."""
    ax1, ax2 = axes
    scale = spec.omega0 or 1.0
    for d, table in tables.items():
        t_scaled = np.asarray(column(table, "t_omega0"))
        ax1.plot(t_scaled, column(table, "G1"), **DIM_STYLE[d])
        ax2.plot(t_scaled, scale * np.asarray(column(table, "G2")), **DIM_STYLE[d])
    ax1.set_ylabel(r"$G_1(t)$")
    ax2.set_ylabel(r"$\omega_0\, G_2(t)$")
    ax2.set_xlabel(r"$\omega_0 t$")
    ax1.legend(loc="upper right")


def _draw_fig5(spec: FigureSpec, tables: dict[int, Table], axes) -> None:
    """Scaled position deviation vs temperature with equipartition profile."""
    for ax, (d, table) in zip(axes, tables.items()):
        ts = column(table, "T_scaled")
        ax.plot(ts, column(table, "dx_scaled"), **DIM_STYLE[d])
        ax.plot(ts, column(table, "equipartition_ref"), **REFERENCE_STYLE)
        ax.axhline(1.0, color="#aaaaaa", linewidth=0.6)
        ax.set_xlabel(r"$k_B T/\hbar\Omega$")
        ax.set_title(f"d = {d}", fontsize=9)
    axes[0].set_ylabel(r"$\Delta\acute{x}$")


def _draw_fig6(spec: FigureSpec, tables: dict[int, Table], axes) -> None:
    """Backflow measure vs coupling on the log scale with the bounds."""
    ax = axes[0]
    for d, table in tables.items():
        ax.plot(column(table, "eta"), column(table, "N_scaled"), **DIM_STYLE[d])
        if d in spec.eta_c:
            ax.axvline(spec.eta_c[d], **BOUND_LINE_STYLE[d])
    ax.set_xlabel(r"$\eta$")
    ax.set_ylabel(r"$\mathcal{N}\ [g_{B,1} n_{0,1} m_I/\hbar]$")
    ax.legend(loc="upper left")


def _draw_fig7(spec: FigureSpec, tables: dict[int, Table], axes) -> None:
    """J-distance vs temperature."""
    ax = axes[0]
    for d, table in tables.items():
        ax.plot(column(table, "T_scaled"), column(table, "JD"), **DIM_STYLE[d])
    ax.set_xlabel(r"$k_B T/\hbar\Omega$")
    ax.set_ylabel(r"$J\mathcal{D}$")
    ax.legend(loc="upper right")


_DRAW = {
    "fig1": _draw_fig1,
    "fig2": _draw_fig2,
    "fig3": _draw_fig3,
    "fig4": _draw_fig4,
    "fig5": _draw_fig5,
    "fig6": _draw_fig6,
    "fig7": _draw_fig7,
}
