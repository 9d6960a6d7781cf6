"""Stationary covariances of the trapped impurity, squeezing quantifiers,
and the equipartition reference profile.

Both variances are fluctuation-dissipation integrals over the imaginary
part of the susceptibility,

    <x^2> = (hbar/pi) int_0^Lambda coth(hbar w/2 k_B T) chi''(w) dw,
    <p^2> = (hbar m_I^2/pi) int_0^Lambda w^2 coth(.) chi''(w) dw,

with chi''(w) = (1/m_I) w xi / [(w xi)^2 + (Omega^2 - w^2 + w theta)^2]
built from the fluctuation-consistent Fourier kernels of the spectral
module.  The momentum form follows from the position one by the same
stationary-limit argument applied to the velocity propagator (the extra
w^2 weight), and stays finite thanks to the sharp cutoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .constants import HBAR, K_B
from .params import DerivedBath
from .spectral import SpectralModel, damping_fourier, thermal_factor, CUTOFF_EDGE_REL


@dataclass(frozen=True)
class SqueezingPoint:
    """Scaled steady-state deviations at one temperature.

    dx_scaled = sqrt(2 m_I Omega <x^2> / hbar), dp_scaled analogous;
    equipartition_ref = sqrt(2 T_scaled) with T_scaled = k_B T / hbar Omega.
    """

    T: float
    T_scaled: float
    dx_scaled: float
    dp_scaled: float
    equipartition_ref: float

    def __post_init__(self) -> None:
        if self.dx_scaled <= 0 or self.dp_scaled <= 0:
            raise ValueError("scaled deviations must be positive")
        if self.dx_scaled * self.dp_scaled < 1.0 - 1e-6:
            raise ValueError(
                f"Heisenberg bound violated: dx*dp = {self.dx_scaled * self.dp_scaled!r}")


def susceptibility_sq_and_imag(bath: DerivedBath, omega: float,
                               model: SpectralModel | None = None) -> tuple[float, float]:
    """(|chi|^2, chi'') at omega for the trapped impurity.

    |chi|^2 = Q_d = (1/m_I^2) |(Omega^2 - w^2 + w theta) + i w xi|^-2 and
    chi'' = m_I w xi Q_d; above the cutoff both xi and chi'' vanish.
    """
    if bath.Omega <= 0:
        raise ValueError("susceptibility is defined for trapped scenarios")
    if omega <= 0:
        raise ValueError("omega must be > 0")
    if model is None:
        model = SpectralModel.bec_lowfreq(bath)
    xi, theta = damping_fourier(model, omega)
    Omega = bath.Omega
    Q = 1.0 / (bath.m_I**2 * ((Omega**2 - omega**2 + omega * theta) ** 2
                              + (omega * xi) ** 2))
    chi_im = bath.m_I * omega * xi * Q
    return Q, chi_im


@lru_cache(maxsize=512)
def _response_roots(model: SpectralModel, Omega: float,
                    n_scan: int = 1200) -> tuple[float, ...]:
    """Zeros of Omega^2 - w^2 + w theta(w) in (0, Lambda): resonance points."""
    L = model.Lambda

    def g(w: float) -> float:
        _, theta = damping_fourier(model, w)
        return Omega**2 - w * w + w * theta

    ws = np.linspace(L * 1e-7, L * (1.0 - 10.0 * CUTOFF_EDGE_REL), n_scan)
    gs = np.array([g(w) for w in ws])
    roots = []
    for i in range(n_scan - 1):
        if gs[i] == 0.0:
            roots.append(float(ws[i]))
        elif gs[i] * gs[i + 1] < 0:
            roots.append(float(brentq(g, ws[i], ws[i + 1], xtol=1e-12 * L)))
    return tuple(roots)


def _variance_integral(bath: DerivedBath, model: SpectralModel, T: float,
                       moment: int) -> float:
    """int_0^Lambda w^moment coth(.) chi''(w) dw with resonance-aware splits."""
    L = model.Lambda
    upper = L * (1.0 - 10.0 * CUTOFF_EDGE_REL)

    def f(w: float) -> float:
        _, chi_im = susceptibility_sq_and_imag(bath, w, model)
        return w**moment * thermal_factor(w, T) * chi_im

    edges = [0.0, upper]
    for w_star in _response_roots(model, bath.Omega):
        xi, theta = damping_fourier(model, w_star)
        # effective half width of the resonance Lorentzian in omega
        dg = abs(-2.0 * w_star + theta
                 + w_star * _theta_slope(model, w_star))
        width = w_star * xi / max(dg, 1e-30)
        for edge in (w_star - 40.0 * width, w_star + 40.0 * width):
            if 0.0 < edge < upper:
                edges.append(edge)
        edges.append(w_star)
    edges = sorted(set(edges))
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi - lo < 1e-300:
            continue
        val, _ = quad(f, lo, hi, epsabs=1e-300, epsrel=1e-10, limit=500)
        total += val
    return total


def _theta_slope(model: SpectralModel, w: float) -> float:
    h = 1e-5 * w
    _, tp = damping_fourier(model, w + h)
    _, tm = damping_fourier(model, w - h)
    return (tp - tm) / (2.0 * h)


def position_variance_ss(bath: DerivedBath, T: float,
                         model: SpectralModel | None = None) -> float:
    """Steady-state <x^2> [m^2]; eta = 0 reduces to the bare oscillator."""
    _check_trapped(bath, T)
    if model is None:
        if bath.eta == 0:
            return (HBAR / (2.0 * bath.m_I * bath.Omega)
                    * thermal_factor(bath.Omega, T))
        model = SpectralModel.bec_lowfreq(bath)
    return HBAR / math.pi * _variance_integral(bath, model, T, moment=0)


def momentum_variance_ss(bath: DerivedBath, T: float,
                         model: SpectralModel | None = None) -> float:
    """Steady-state <p^2> [kg^2 m^2/s^2]."""
    _check_trapped(bath, T)
    if model is None:
        if bath.eta == 0:
            return (HBAR * bath.m_I * bath.Omega / 2.0
                    * thermal_factor(bath.Omega, T))
        model = SpectralModel.bec_lowfreq(bath)
    return HBAR * bath.m_I**2 / math.pi * _variance_integral(bath, model, T, moment=2)


def _check_trapped(bath: DerivedBath, T: float) -> None:
    if bath.Omega <= 0:
        raise ValueError("steady-state variances require Omega > 0")
    if T < 0:
        raise ValueError("temperature must be >= 0")


def squeezing_profile(bath: DerivedBath, T_grid: np.ndarray,
                      model: SpectralModel | None = None) -> list[SqueezingPoint]:
    """Scaled deviations and the equipartition reference across temperatures."""
    _check_trapped(bath, 0.0)
    x_scale = HBAR / (2.0 * bath.m_I * bath.Omega)        # x_zpf^2
    p_scale = HBAR * bath.m_I * bath.Omega / 2.0
    points = []
    for T in np.asarray(T_grid, dtype=float):
        T_scaled = K_B * T / (HBAR * bath.Omega)
        vx = position_variance_ss(bath, T, model)
        vp = momentum_variance_ss(bath, T, model)
        points.append(SqueezingPoint(
            T=float(T),
            T_scaled=T_scaled,
            dx_scaled=math.sqrt(vx / x_scale),
            dp_scaled=math.sqrt(vp / p_scale),
            equipartition_ref=math.sqrt(2.0 * T_scaled),
        ))
    return points
