"""Spectral-density family and the derived bath kernels.

Three model kinds share one interface:

* ``BEC_EXACT``    - full Bogoliubov-bath scalar density (validation only),
* ``BEC_LOWFREQ``  - super-Ohmic monomial m_I tau_d^d w^(d+2) with a sharp
                     cutoff at Lambda_d (the working model everywhere),
* ``OHMIC``        - phenomenological m_I gamma w with the same cutoff.

The tensor density is diagonal, J^xx = scalar / d.

Kernel conventions.  The time/Laplace-domain damping kernel follows
Gamma(t) = (1/m_I) int (J^xx/w) cos(w t) dw, and the noise kernel obeys
<{B(u), B(v)}> = 2 hbar nu(u - v).  The Fourier-domain pair returned by
``damping_fourier`` is normalised so that the fluctuation-dissipation
relation J^xx(w) = m_I w xi(w) / pi holds exactly; with the Gamma
normalisation above this equals twice the analytic continuation of
``damping_laplace`` at S = -i w + 0+.  The steady-state variance integrals
require this pairing of noise and response; mixing the halves breaks the
uncertainty relation at strong coupling.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .constants import HBAR, K_B
from .numerics import QuadratureSpec, DEFAULT_QUAD, integrate_adaptive, integrate_principal_value
from .params import SOLID_ANGLE, DerivedBath

CUTOFF_EDGE_REL = 1e-9  # damping_fourier rejects w this close to the cutoff


class SpectralKind(enum.Enum):
    BEC_EXACT = "bec_exact"
    BEC_LOWFREQ = "bec_lowfreq"
    OHMIC = "ohmic"


@dataclass(frozen=True)
class SpectralModel:
    """One spectral-density model with its sharp cutoff.

    gamma is only meaningful for the Ohmic kind; the BEC kinds carry the
    parent bath for the exact form and the mode-integral oracle.
    """

    kind: SpectralKind
    d: int
    Lambda: float
    tau_d_pow_d: float
    m_I: float
    gamma: float = 0.0
    bath: DerivedBath | None = None

    def __post_init__(self) -> None:
        if self.d not in (1, 2, 3):
            raise ValueError(f"dimension must be 1, 2 or 3, got {self.d!r}")
        if self.Lambda <= 0 or self.m_I <= 0:
            raise ValueError("Lambda and m_I must be > 0")
        if self.kind is SpectralKind.OHMIC and self.gamma < 0:
            raise ValueError("Ohmic damping constant must be >= 0")

    @classmethod
    def bec_lowfreq(cls, bath: DerivedBath) -> "SpectralModel":
        return cls(kind=SpectralKind.BEC_LOWFREQ, d=bath.d, Lambda=bath.Lambda_d,
                   tau_d_pow_d=bath.tau_d_pow_d, m_I=bath.m_I, bath=bath)

    @classmethod
    def bec_exact(cls, bath: DerivedBath) -> "SpectralModel":
        return cls(kind=SpectralKind.BEC_EXACT, d=bath.d, Lambda=bath.Lambda_d,
                   tau_d_pow_d=bath.tau_d_pow_d, m_I=bath.m_I, bath=bath)

    @classmethod
    def ohmic(cls, bath: DerivedBath, gamma: float) -> "SpectralModel":
        return cls(kind=SpectralKind.OHMIC, d=bath.d, Lambda=bath.Lambda_d,
                   tau_d_pow_d=0.0, m_I=bath.m_I, gamma=gamma, bath=bath)


@dataclass(frozen=True)
class KernelSample:
    """One kernel evaluation with its domain tag ('time'|'laplace'|'fourier')."""

    argument: complex
    value: complex
    domain: str


def spectral_scalar(model: SpectralModel, omega: float) -> float:
    """Scalar spectral density [kg/s^2] at omega >= 0."""
    if omega < 0:
        raise ValueError(f"omega must be >= 0, got {omega!r}")
    if omega == 0.0:
        return 0.0
    if model.kind is SpectralKind.BEC_LOWFREQ:
        if omega >= model.Lambda:
            return 0.0
        return model.m_I * model.tau_d_pow_d * omega ** (model.d + 2)
    if model.kind is SpectralKind.OHMIC:
        if omega >= model.Lambda:
            return 0.0
        return model.m_I * model.gamma * omega
    return _bec_exact_scalar(model, omega)


def _bec_exact_scalar(model: SpectralModel, omega: float) -> float:
    bath = model.bath
    if bath is None:
        raise ValueError("BEC_EXACT requires the parent bath")
    d = model.d
    cond = bath.condensate
    R = math.sqrt(1.0 + (omega / model.Lambda) ** 2)
    inner = cond.m_B / (bath.g_Bd ** (d / (d + 2.0)) * bath.n0d)
    return (SOLID_ANGLE[d] * math.sqrt(2.0) ** d * bath.eta**2
            * model.Lambda ** (d + 2) / (2.0 * math.pi) ** d
            * (inner * (R - 1.0)) ** ((d + 2.0) / 2.0) / R)


def spectral_component_xx(model: SpectralModel, omega: float) -> float:
    """Diagonal tensor component J^xx = scalar / d; off-diagonals vanish."""
    return spectral_scalar(model, omega) / model.d


def spectral_tensor(model: SpectralModel, omega: float) -> np.ndarray:
    """Full d x d spectral tensor (scalar/d) * Identity."""
    return spectral_component_xx(model, omega) * np.eye(model.d)


def spectral_from_modes(bath: DerivedBath, omega: float) -> float:
    """Scalar spectral density rebuilt from the Bogoliubov mode sum.

    Independent derivation route: invert the dispersion for the
    contributing root k_w, apply the 1/|dw/dk| Jacobian and the
    d-dimensional angular measure to the squared coupling.  Serves as the
    oracle for ``spectral_scalar`` with the BEC_EXACT kind.
    """
    if omega <= 0:
        raise ValueError(f"omega must be > 0, got {omega!r}")
    d = bath.d
    xi, c = bath.xi, bath.c_sound
    k_w = math.sqrt(math.sqrt(1.0 + 2.0 * (xi * omega / c) ** 2) - 1.0) / xi
    u = (xi * k_w) ** 2
    jacobian = c * (1.0 + u) / math.sqrt(1.0 + u / 2.0)   # dw/dk at k_w
    g_IB = bath.eta * bath.g_Bd
    coupling_sq = g_IB**2 * bath.n0d * math.sqrt(u / (u + 2.0)) / HBAR
    return (SOLID_ANGLE[d] / (2.0 * math.pi) ** d
            * k_w ** (d + 1) * coupling_sq / jacobian)


def _coth_half(x: float) -> float:
    """coth(x) for x > 0, accurate for small arguments."""
    if x < 1e-8:
        return 1.0 / x + x / 3.0
    return 1.0 / math.tanh(x)


def thermal_factor(omega: float, T: float) -> float:
    """coth(hbar w / 2 k_B T), with the T = 0 limit equal to 1."""
    if T == 0.0:
        return 1.0
    return _coth_half(HBAR * omega / (2.0 * K_B * T))


def noise_kernel(model: SpectralModel, tau: float, T: float,
                 spec: QuadratureSpec | None = None) -> float:
    """nu^xx(tau) = int_0^Lambda J^xx(w) coth(hbar w/2 k_B T) cos(w tau) dw."""
    if T < 0:
        raise ValueError("temperature must be >= 0")
    tau = abs(tau)
    if spec is None:
        spec = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-10,
                              max_subdivisions=300, oscillation_hint=tau or None)
    def integrand(w: float) -> float:
        return spectral_component_xx(model, w) * thermal_factor(w, T) * math.cos(w * tau)
    val, _ = integrate_adaptive(integrand, 0.0, model.Lambda, spec)
    return val


def noise_kernel_t0_closed(model: SpectralModel, tau: float) -> float:
    """Zero-temperature noise kernel in closed form (monomial kinds only)."""
    if model.kind is SpectralKind.BEC_LOWFREQ:
        pref = model.m_I * model.tau_d_pow_d / model.d
        return pref * _cos_moment(model.d + 2, model.Lambda, abs(tau))
    if model.kind is SpectralKind.OHMIC:
        return model.m_I * model.gamma / model.d * _cos_moment(1, model.Lambda, abs(tau))
    raise ValueError("closed form available for monomial kinds only")


def _cos_moment(n: int, L: float, t: float) -> float:
    """int_0^L w^n cos(w t) dw for integer n >= 0, stable for small L*t."""
    x = L * t
    if x < 0.35:
        # alternating series in (L t)^2; fast and cancellation-free
        total, term, k = 0.0, 1.0 / (n + 1.0), 0
        while True:
            total += term
            k += 1
            term *= -x * x / ((2 * k) * (2 * k - 1.0)) * (n + 2 * k - 1.0) / (n + 2 * k + 1.0)
            if abs(term) < 1e-17 * abs(total) or k > 60:
                break
        return L ** (n + 1) * total
    # integrate by parts: int x^n cos = poly(x) sin + poly(x) cos, evaluated at L
    s, c = math.sin(x), math.cos(x)
    if n == 1:
        val = x * s + c - 1.0
    elif n == 3:
        val = (x**3 - 6.0 * x) * s + (3.0 * x**2 - 6.0) * c + 6.0
    elif n == 4:
        val = (x**4 - 12.0 * x**2 + 24.0) * s + (4.0 * x**3 - 24.0 * x) * c
    elif n == 5:
        val = (x**5 - 20.0 * x**3 + 120.0 * x) * s + (5.0 * x**4 - 60.0 * x**2 + 120.0) * c - 120.0
    else:
        raise ValueError(f"unsupported moment order {n}")
    return val / t ** (n + 1)


def damping_kernel_time(model: SpectralModel, t: float,
                        spec: QuadratureSpec | None = None) -> float:
    """Gamma^xx(t) = (1/m_I) int_0^Lambda (J^xx(w)/w) cos(w t) dw  [1/s^2]."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if spec is None:
        spec = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-10,
                              max_subdivisions=300, oscillation_hint=t or None)
    def integrand(w: float) -> float:
        return spectral_component_xx(model, w) / w * math.cos(w * t)
    val, _ = integrate_adaptive(integrand, 0.0, model.Lambda, spec)
    return val / model.m_I


def damping_kernel_time_zero(model: SpectralModel) -> float:
    """Gamma^xx(0) in closed form for the monomial kinds."""
    if model.kind is SpectralKind.BEC_LOWFREQ:
        return model.tau_d_pow_d * model.Lambda ** (model.d + 2) / (model.d * (model.d + 2))
    if model.kind is SpectralKind.OHMIC:
        return model.gamma * model.Lambda / model.d
    raise ValueError("closed form available for monomial kinds only")


def damping_laplace(model: SpectralModel, S: complex,
                    method: str = "closed") -> complex:
    """Laplace transform of the damping kernel at S (Re S > 0 expected).

    method='closed' uses the per-dimension elementary forms (arctan for
    odd d, logarithm for d = 2); method='quadrature' evaluates
    (1/m_I) int_0^Lambda (J^xx/w) S/(S^2+w^2) dw as the reference route.
    """
    S = complex(S)
    if S == 0:
        raise ValueError("S = 0 is outside the domain of the transform")
    if method == "quadrature":
        return _damping_laplace_quadrature(model, S)
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    L = model.Lambda
    if model.kind is SpectralKind.OHMIC:
        if abs(S) > 2.0 * L:
            return model.gamma / model.d * _tail_series(0, L, S)
        return model.gamma / model.d * np.arctan(L / S)
    if model.kind is not SpectralKind.BEC_LOWFREQ:
        return _damping_laplace_quadrature(model, S)
    d, td = model.d, model.tau_d_pow_d
    if abs(S) > 2.0 * L:
        # the elementary forms cancel catastrophically for |S| >> Lambda
        return td / d * _tail_series(d + 1, L, S)
    if d == 1:
        body = L - S * np.arctan(L / S)
    elif d == 2:
        body = 0.5 * (L**2 - S**2 * np.log(1.0 + L**2 / S**2))
    else:
        body = L**3 / 3.0 - S**2 * L + S**3 * np.arctan(L / S)
    return td / d * S * body


def _tail_series(n: int, L: float, S: complex) -> complex:
    """S int_0^L w^n/(S^2+w^2) dw / m-normalisation, convergent for |S| > L."""
    ratio = -(L / S) ** 2
    total = 0.0j
    term = L ** (n + 1) / (n + 1.0) / S
    k = 0
    while abs(term) > 1e-18 * max(abs(total), 1e-300) and k < 200:
        total += term
        k += 1
        term *= ratio * (n + 2 * k - 1.0) / (n + 2 * k + 1.0)
    return total


def _damping_laplace_quadrature(model: SpectralModel, S: complex) -> complex:
    def integrand(w: float) -> complex:
        return spectral_component_xx(model, w) / w * (S / (S * S + w * w))
    # S near the imaginary axis puts a sharp Lorentzian at w = |Im S|
    pts = None
    w_res = abs(S.imag)
    if 0.0 < w_res < model.Lambda and abs(S.real) < 0.1 * w_res:
        pts = [w_res]
    re, _ = quad(lambda w: integrand(w).real, 0.0, model.Lambda,
                 epsabs=1e-300, epsrel=1e-11, limit=400, points=pts)
    im, _ = quad(lambda w: integrand(w).imag, 0.0, model.Lambda,
                 epsabs=1e-300, epsrel=1e-11, limit=400, points=pts)
    return complex(re, im) / model.m_I


def damping_fourier(model: SpectralModel, omega: float,
                    method: str = "closed") -> tuple[float, float]:
    """Fourier-domain damping pair (xi^xx, theta^xx) at omega > 0.

    Fluctuation-dissipation normalisation (see module docstring):
    xi = pi J^xx / (m_I w) below the cutoff and 0 above; theta is the
    matching dispersive part, evaluated in closed form or, with
    method='pv', as the principal-value integral
    theta = -(2 w / m_I) PV int_0^Lambda J^xx(w') / (w' (w'^2 - w^2)) dw'.
    """
    if omega <= 0:
        raise ValueError("omega must be > 0")
    L = model.Lambda
    if abs(omega - L) < CUTOFF_EDGE_REL * L:
        raise ValueError("omega too close to the cutoff edge for the PV kernel")
    xi = math.pi * spectral_component_xx(model, omega) / (model.m_I * omega)
    if method == "pv":
        theta = _theta_pv(model, omega)
    elif method == "closed":
        theta = _theta_closed(model, omega)
    else:
        raise ValueError(f"unknown method {method!r}")
    return xi, theta


def _theta_closed(model: SpectralModel, omega: float) -> float:
    L, w = model.Lambda, omega
    log_ratio = math.log(abs(L + w) / abs(L - w))
    if model.kind is SpectralKind.OHMIC:
        return model.gamma / model.d * log_ratio
    if model.kind is not SpectralKind.BEC_LOWFREQ:
        return _theta_pv(model, omega)
    d, td = model.d, model.tau_d_pow_d
    if d == 1:
        single = td * w * (w * log_ratio / 2.0 - L)
    elif d == 2:
        single = -(td * w / 4.0) * (L**2 + w**2 * math.log(abs(L**2 - w**2) / w**2))
    else:
        single = -(td * w / 3.0) * (L**3 / 3.0 + w**2 * L - w**3 * log_ratio / 2.0)
    return 2.0 * single


def _theta_pv(model: SpectralModel, omega: float) -> float:
    def f(wp: float) -> float:
        return spectral_component_xx(model, wp) / (wp * (wp * wp - omega * omega))
    if omega >= model.Lambda:
        val, _ = quad(f, 0.0, model.Lambda, epsabs=1e-300, epsrel=1e-10, limit=300)
    else:
        val = integrate_principal_value(
            f, 0.0, model.Lambda, omega,
            QuadratureSpec(abs_tol=1e-300, rel_tol=1e-9, max_subdivisions=300))
    return -2.0 * omega * val / model.m_I


def lambda_kernel(model: SpectralModel, tau: float,
                  spec: QuadratureSpec | None = None) -> float:
    """lambda^xx(tau) = int_0^Lambda J^xx(w) sin(w tau) dw = -m_I dGamma/dtau."""
    if spec is None:
        spec = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-10,
                              max_subdivisions=300, oscillation_hint=abs(tau) or None)
    def integrand(w: float) -> float:
        return spectral_component_xx(model, w) * math.sin(w * tau)
    val, _ = integrate_adaptive(integrand, 0.0, model.Lambda, spec)
    return val
