"""Untrapped-impurity observables: MSD, superdiffusion coefficients,
average kinetic energy and its classical steady state.

All observables use the long-time asymptotic propagators G1 = 1/alpha_d,
G2 = t/alpha_d inside the covariance integrals; the double time integral
over the noise kernel is reduced analytically to a single frequency
integral before quadrature.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .constants import HBAR, K_B
from .numerics import QuadratureSpec, integrate_adaptive, hyp1f2
from .params import DerivedBath
from .spectral import SpectralModel, spectral_component_xx, thermal_factor, noise_kernel


class RegimeWarning(UserWarning):
    """Emitted when a closed-form regime is evaluated outside its window."""


@dataclass(frozen=True)
class InitialState:
    """Initial second moments; cross terms are assumed zero."""

    x2_0: float = 0.0   # <x(0)^2>  [m^2]
    v2_0: float = 0.0   # <v(0)^2>  [m^2/s^2]

    def __post_init__(self) -> None:
        if self.x2_0 < 0 or self.v2_0 < 0:
            raise ValueError("initial variances must be >= 0")

    @classmethod
    def from_momentum(cls, x2_0: float, p2_0: float, m_I: float) -> "InitialState":
        return cls(x2_0=x2_0, v2_0=p2_0 / m_I**2)

    def p2_0(self, m_I: float) -> float:
        return self.v2_0 * m_I**2


@dataclass(frozen=True)
class SeriesOutput:
    """Tabular result: equal-length grids plus bookkeeping metadata."""

    t: np.ndarray
    values: np.ndarray
    units: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.t) != len(self.values):
            raise ValueError("grid and value lengths must match")
        if not np.isfinite(self.values).all():
            raise ValueError("series values must be finite")


def _require_untrapped(bath: DerivedBath) -> None:
    if bath.Omega != 0:
        raise ValueError("free-dynamics observables require Omega = 0")


def _msd_time_kernel(x: float) -> float:
    """(x^2 + 2 - 2 cos x - 2 x sin x), stable near x = 0 (-> x^4/4)."""
    if abs(x) < 0.05:
        x2 = x * x
        return x2 * x2 * (0.25 - x2 / 72.0)
    return x * x + 2.0 - 2.0 * math.cos(x) - 2.0 * x * math.sin(x)


def msd_numeric(bath: DerivedBath, init: InitialState, t_grid: np.ndarray,
                T: float) -> SeriesOutput:
    """Mean squared displacement on t_grid.

    MSD(t) = (G1-1)^2 x2_0 + G2^2 v2_0
             + (hbar/(m_I^2 alpha^2)) int_0^Lambda J^xx coth(.) K(w,t)/w^4 dw,
    where K is the exact double-time integral of (t-u)(t-v) cos(w(u-v)).
    """
    _require_untrapped(bath)
    if T < 0:
        raise ValueError("temperature must be >= 0")
    t_grid = np.asarray(t_grid, dtype=float)
    model = SpectralModel.bec_lowfreq(bath)
    alpha = bath.alpha_d
    pref = HBAR / (bath.m_I**2 * alpha**2)
    out = np.empty_like(t_grid)
    for i, t in enumerate(t_grid):
        if t == 0.0:
            dyn = 0.0
        else:
            spec = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-10,
                                  max_subdivisions=400, oscillation_hint=t)
            def integrand(w: float, t=t) -> float:
                return (spectral_component_xx(model, w) * thermal_factor(w, T)
                        * _msd_time_kernel(w * t) / w**4)
            dyn, _ = integrate_adaptive(integrand, 0.0, bath.Lambda_d, spec)
        out[i] = ((1.0 / alpha - 1.0) ** 2 * init.x2_0
                  + (t / alpha) ** 2 * init.v2_0
                  + pref * dyn)
    return SeriesOutput(t=t_grid, values=out, units="m^2",
                        meta={"d": bath.d, "eta": bath.eta, "T": T, "method": "numeric"})


def msd_brute_force(bath: DerivedBath, t: float, T: float,
                    n_time: int = 240) -> float:
    """Literal double-time quadrature of the MSD noise term (test oracle).

    Trapezoidal (u, v) grid over the noise kernel; slow, for verification.
    """
    _require_untrapped(bath)
    model = SpectralModel.bec_lowfreq(bath)
    alpha = bath.alpha_d
    u = np.linspace(0.0, t, n_time)
    nu = np.array([noise_kernel(model, float(s), T) for s in u])
    # nu(u - v) sampled through the first row/column by stationarity
    idx = np.abs(np.subtract.outer(np.arange(n_time), np.arange(n_time)))
    wt = np.outer(t - u, t - u) * nu[idx]
    integral = np.trapezoid(np.trapezoid(wt, u, axis=1), u)
    return HBAR / (bath.m_I * alpha) ** 2 * integral


Regime = Literal["LT", "HT"]


def superdiffusion_coefficient(bath: DerivedBath, regime: Regime, T: float) -> float:
    """Ballistic-coefficient closed forms.

    LT: hbar tau_d^d Lambda^(d+1) / (m_I d (d+1) alpha^2)   (T = 0 limit)
    HT: 2 k_B T tau_d^d Lambda^d / (m_I d^2 alpha^2)
    A RegimeWarning is attached when HT is requested below the
    high-temperature threshold of this bath; the value is still returned.
    """
    d, alpha = bath.d, bath.alpha_d
    if regime == "LT":
        return (HBAR * bath.tau_d_pow_d * bath.Lambda_d ** (d + 1)
                / (bath.m_I * d * (d + 1) * alpha**2))
    if regime == "HT":
        if T < 0:
            raise ValueError("temperature must be >= 0")
        if K_B * T < HBAR * bath.Lambda_d:
            warnings.warn(
                f"HT coefficient evaluated below the high-temperature threshold "
                f"(k_B T / hbar Lambda_d = {K_B * T / (HBAR * bath.Lambda_d):.3f})",
                RegimeWarning, stacklevel=2)
        return (2.0 * K_B * T * bath.tau_d_pow_d * bath.Lambda_d**d
                / (bath.m_I * d**2 * alpha**2))
    raise ValueError(f"regime must be 'LT' or 'HT', got {regime!r}")


def superdiffusion_ht_beta_form(bath: DerivedBath, eta: float, T: float) -> float:
    """HT coefficient as an explicit function of the coupling,
    D(eta) = (2 k_B T/m_I) beta eta^2 / (beta^2 d^-2 eta^4 + 2 beta eta^2 + d^2)."""
    beta, d = bath.beta_d, bath.d
    num = beta * eta**2
    den = beta**2 * eta**4 / d**2 + 2.0 * beta * eta**2 + d**2
    return 2.0 * K_B * T / bath.m_I * num / den


@dataclass(frozen=True)
class HtPeak:
    eta_max: float
    D_max: float


def ht_peak(bath: DerivedBath, T: float) -> HtPeak:
    """Peak of the HT coefficient: eta_max = d / sqrt(beta_d),
    D_max = k_B T / (2 m_I), the same in every dimension."""
    return HtPeak(eta_max=bath.d / math.sqrt(bath.beta_d),
                  D_max=K_B * T / (2.0 * bath.m_I))


def energy_steady_t0(bath: DerivedBath) -> float:
    """Zero-temperature steady kinetic energy
    hbar Lambda^(d+1) tau_d^d / (alpha^2 d (d+1))."""
    d = bath.d
    return (HBAR * bath.Lambda_d ** (d + 1) * bath.tau_d_pow_d
            / (bath.alpha_d**2 * d * (d + 1)))


def energy(bath: DerivedBath, init: InitialState, t_grid: np.ndarray, T: float,
           method: Literal["closed_T0", "numeric"] = "closed_T0") -> SeriesOutput:
    """Average kinetic energy of the observed coordinate.

    closed_T0 (T = 0 only):
        E(t) = p2_0/(2 m_I alpha^2)
               + E_ss [1 - 1F2((d+1)/2; 1/2, (d+3)/2; -Lambda^2 t^2/4)],
    which is the exact frequency integral of the double-time noise term;
    it starts at the initial energy and relaxes to E_ss with oscillations.
    numeric: direct quadrature of 2 int_0^t (t-s) nu^xx(s) ds.
    """
    _require_untrapped(bath)
    t_grid = np.asarray(t_grid, dtype=float)
    d, alpha = bath.d, bath.alpha_d
    e_init = init.p2_0(bath.m_I) / (2.0 * bath.m_I * alpha**2)
    if method == "closed_T0":
        if T != 0:
            raise ValueError("closed_T0 requires T = 0")
        e_ss = energy_steady_t0(bath)
        vals = np.array([
            e_init + e_ss * (1.0 - hyp1f2((d + 1) / 2.0, 0.5, (d + 3) / 2.0,
                                          -(bath.Lambda_d * t) ** 2 / 4.0))
            for t in t_grid])
    elif method == "numeric":
        model = SpectralModel.bec_lowfreq(bath)
        pref = HBAR / (2.0 * bath.m_I * alpha**2)
        vals = np.empty_like(t_grid)
        for i, t in enumerate(t_grid):
            if t == 0.0:
                vals[i] = e_init
                continue
            spec = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-9,
                                  max_subdivisions=400,
                                  oscillation_hint=bath.Lambda_d)
            def integrand(s: float, t=t) -> float:
                return (t - s) * noise_kernel(model, s, T)
            val, _ = integrate_adaptive(integrand, 0.0, t, spec)
            vals[i] = e_init + pref * 2.0 * val
    else:
        raise ValueError(f"unknown method {method!r}")
    return SeriesOutput(t=t_grid, values=vals, units="J",
                        meta={"d": d, "eta": bath.eta, "T": T, "method": method})


def energy_classical(bath: DerivedBath, eta_grid: np.ndarray, T: float) -> SeriesOutput:
    """Classical steady-state energy profile over a coupling grid,
    E(eta) = 2 k_B T beta eta^2 / (beta^2 d^-2 eta^4 + 2 beta eta^2 + d^2);
    the peak value k_B T / 2 sits at eta_max."""
    if T < 0:
        raise ValueError("temperature must be >= 0")
    eta_grid = np.asarray(eta_grid, dtype=float)
    beta, d = bath.beta_d, bath.d
    vals = (2.0 * K_B * T * beta * eta_grid**2
            / (beta**2 * eta_grid**4 / d**2 + 2.0 * beta * eta_grid**2 + d**2))
    peak = HtPeak(eta_max=d / math.sqrt(beta), D_max=K_B * T / 2.0)
    return SeriesOutput(t=eta_grid, values=vals, units="J",
                        meta={"d": d, "T": T, "peak_eta": peak.eta_max,
                              "peak_value": peak.D_max})
