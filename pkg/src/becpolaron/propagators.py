"""Green's functions of the generalized Langevin equation.

G1 propagates the initial position, G2 the initial velocity:
L[G1](S) = S / (S^2 + Omega^2 + S L[Gamma](S)),
L[G2](S) = 1 / (S^2 + Omega^2 + S L[Gamma](S)),
with G1(0) = 1, G1'(0) = 0, G2(0) = 0, G2'(0) = 1.  Time-domain values come
from the Zakian inversion; the untrapped long-time asymptotes are
G1 = 1/alpha_d and G2 = t/alpha_d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .numerics import ZakianConstants, DEFAULT_ZAKIAN, zakian_invert
from .params import DerivedBath
from .spectral import SpectralModel, damping_laplace, damping_kernel_time_zero

Which = Literal["G1", "G2"]


@dataclass(frozen=True)
class PropagatorSamples:
    """Sampled propagators on a strictly increasing time grid."""

    t: np.ndarray
    G1: np.ndarray
    G2: np.ndarray
    method: Literal["zakian", "asymptotic"]
    bath: DerivedBath = field(repr=False)

    def __post_init__(self) -> None:
        if not (np.diff(self.t) > 0).all():
            raise ValueError("time grid must be strictly increasing")
        if len(self.t) != len(self.G1) or len(self.t) != len(self.G2):
            raise ValueError("grid and sample lengths must match")
        if not (np.isfinite(self.G1).all() and np.isfinite(self.G2).all()):
            raise ValueError("propagator samples must be finite")


def green_laplace(which: Which, S: complex, Omega: float, model: SpectralModel,
                  method: str = "closed") -> complex:
    """Laplace-domain propagator at S; Omega = 0 gives the free particle."""
    S = complex(S)
    if S == 0 and Omega == 0:
        raise ValueError("S = 0 is a pole of the free propagator")
    denom = S * S + Omega * Omega + S * damping_laplace(model, S, method=method)
    scale = max(abs(S) ** 2, Omega * Omega, 1.0)
    if abs(denom) < 1e-14 * scale:
        raise ZeroDivisionError(f"propagator denominator vanishes at S={S!r}")
    if which == "G1":
        return S / denom
    if which == "G2":
        return 1.0 / denom
    raise ValueError(f"which must be 'G1' or 'G2', got {which!r}")


def propagators_zakian(bath: DerivedBath, t_grid: np.ndarray,
                       model: SpectralModel | None = None,
                       consts: ZakianConstants = DEFAULT_ZAKIAN,
                       laplace_method: str = "closed") -> PropagatorSamples:
    """Pointwise Zakian inversion of both propagators on t_grid (> 0)."""
    t_grid = np.asarray(t_grid, dtype=float)
    if (t_grid <= 0).any():
        raise ValueError("Zakian inversion needs strictly positive times")
    if model is None:
        model = SpectralModel.bec_lowfreq(bath)
    Omega = bath.Omega
    G1 = np.empty_like(t_grid)
    G2 = np.empty_like(t_grid)
    for i, t in enumerate(t_grid):
        try:
            G1[i] = zakian_invert(
                lambda s: green_laplace("G1", s, Omega, model, laplace_method), float(t), consts)
            G2[i] = zakian_invert(
                lambda s: green_laplace("G2", s, Omega, model, laplace_method), float(t), consts)
        except Exception as exc:
            raise RuntimeError(f"Zakian inversion failed at t={t!r}") from exc
    return PropagatorSamples(t=t_grid, G1=G1, G2=G2, method="zakian", bath=bath)


def propagators_asymptotic_free(bath: DerivedBath, t_grid: np.ndarray) -> PropagatorSamples:
    """Long-time untrapped asymptotes G1 = 1/alpha_d, G2 = t/alpha_d.

    These deliberately violate the t = 0 boundary conditions; they are the
    long-time forms only.
    """
    if bath.Omega != 0:
        raise ValueError("asymptotic propagators exist for the untrapped case only")
    t_grid = np.asarray(t_grid, dtype=float)
    alpha = bath.alpha_d
    return PropagatorSamples(
        t=t_grid,
        G1=np.full_like(t_grid, 1.0 / alpha),
        G2=t_grid / alpha,
        method="asymptotic",
        bath=bath,
    )


@dataclass(frozen=True)
class StabilityReport:
    """Numerical stability profile of the trapped propagators.

    decaying: late-window envelope below the early-window envelope.
    margin: Omega^2 - Gamma(0); a negative value flags the neglected
    frequency renormalisation turning the effective trap inverted, which
    is a validity warning rather than a hard failure.
    """

    decaying: bool
    early_max: float
    late_max: float
    margin: float

    @property
    def margin_ok(self) -> bool:
        return self.margin > 0

    @property
    def stable(self) -> bool:
        return self.decaying


def stability_probe(bath: DerivedBath, horizon: float,
                    model: SpectralModel | None = None,
                    n_samples: int = 160) -> StabilityReport:
    """Probe |G1|, |G2| decay over [0, horizon] for a trapped impurity.

    Keep the horizon within the Zakian inversion's oscillatory validity
    (roughly two trap periods): far beyond it the inversion itself
    attenuates and every profile looks decaying.
    """
    if bath.Omega <= 0:
        raise ValueError("stability probe applies to trapped scenarios")
    if horizon <= 0:
        raise ValueError("horizon must be > 0")
    if model is None:
        model = SpectralModel.bec_lowfreq(bath)
    t_early = np.linspace(horizon * 1e-4, 0.5 * horizon, n_samples // 2)
    t_late = np.linspace(0.5 * horizon, horizon, n_samples // 2)
    scale = max(bath.Omega, 1.0)
    early = _envelope(bath, model, t_early, scale)
    late = _envelope(bath, model, t_late, scale)
    margin = bath.Omega**2 - damping_kernel_time_zero(model)
    # a >10% envelope drop is resolvable above the inversion's own error
    return StabilityReport(
        decaying=late < 0.9 * early,
        early_max=early,
        late_max=late,
        margin=margin,
    )


def _envelope(bath: DerivedBath, model: SpectralModel, ts: np.ndarray, scale: float) -> float:
    samples = propagators_zakian(bath, ts, model=model)
    return float(np.max(np.maximum(np.abs(samples.G1), scale * np.abs(samples.G2))))
