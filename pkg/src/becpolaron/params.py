"""Raw physical inputs and every derived scale of the impurity-in-BEC model.

The condensate is homogeneous along the directions probed by the impurity;
for d < 3 a transverse harmonic confinement (Gaussian ground state) reduces
the 3d contact interaction to its quasi-1d / quasi-2d counterpart.  All
derived quantities are plain SI scalars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import HBAR, K_B

# Surface factor of the d-dimensional angular integral: S_1=2, S_2=2pi, S_3=4pi.
SOLID_ANGLE = {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}

DIMENSIONS = (1, 2, 3)


def _require_dimension(d: int) -> None:
    if d not in DIMENSIONS:
        raise ValueError(f"dimension must be 1, 2 or 3, got {d!r}")


@dataclass(frozen=True)
class CondensateParams:
    """Boson gas inputs.

    m_B: boson mass [kg]; a3: 3d s-wave scattering length [m];
    n01: one-dimensional density [1/m]; omega_perp / omega_z: transverse
    trap frequencies [rad/s] entering the quasi-1d / quasi-2d reduction.
    """

    m_B: float
    a3: float
    n01: float
    omega_perp: float
    omega_z: float

    def __post_init__(self) -> None:
        for name in ("m_B", "a3", "n01"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)!r}")
        for name in ("omega_perp", "omega_z"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)!r}")

    def transverse_frequency(self, d: int) -> float:
        """Trap frequency entering g_B,d: omega_perp (d=1), omega_z (d=2), none (d=3)."""
        _require_dimension(d)
        if d == 1:
            return self.omega_perp
        if d == 2:
            return self.omega_z
        return 0.0


@dataclass(frozen=True)
class ImpurityParams:
    """Impurity inputs: mass [kg], trap frequency [rad/s] (0 = untrapped),
    coupling ratio eta = g_IB / g_B (dimensionless, >= 0)."""

    m_I: float
    Omega: float = 0.0
    eta: float = 1.0

    def __post_init__(self) -> None:
        if self.m_I <= 0:
            raise ValueError(f"m_I must be > 0, got {self.m_I!r}")
        if self.Omega < 0:
            raise ValueError(f"Omega must be >= 0, got {self.Omega!r}")
        if self.eta < 0:
            raise ValueError(f"eta must be >= 0, got {self.eta!r}")


@dataclass(frozen=True)
class DerivedBath:
    """Every derived scale for one dimension d.

    g_Bd [J m^d], n0d [1/m^d], Lambda_d [rad/s] (sharp UV cutoff),
    tau_d_pow_d [s^d] (characteristic time, stored to the power d),
    alpha_d = 1 + d^-2 (Lambda_d tau_d)^d (mass-renormalisation factor),
    beta_d = (Lambda_d tau_ds)^d, tau_ds_pow_d = eta^-2 tau_d^d,
    eta_c (Froehlich bound), xi [m], c_sound [m/s],
    omega0 = hbar n01^2 / m_I [rad/s], x_zpf [m] (None when Omega = 0).

    The input blocks are kept so downstream modules (spectral model
    factories, mode-integral oracle) can reach masses and eta.
    """

    d: int
    condensate: CondensateParams
    impurity: ImpurityParams
    g_Bd: float
    n0d: float
    Lambda_d: float
    tau_d_pow_d: float
    tau_ds_pow_d: float
    alpha_d: float
    beta_d: float
    eta_c: float
    xi: float
    c_sound: float
    omega0: float
    x_zpf: float | None

    @property
    def eta(self) -> float:
        return self.impurity.eta

    @property
    def m_I(self) -> float:
        return self.impurity.m_I

    @property
    def Omega(self) -> float:
        return self.impurity.Omega

    def tau_d(self) -> float:
        """Characteristic time itself, (tau_d^d)^(1/d)."""
        return self.tau_d_pow_d ** (1.0 / self.d)


def boson_coupling(cond: CondensateParams, d: int) -> float:
    """Dimension-d boson-boson coupling g_B,d [J m^d].

    Quasi-low-d reduction through the transverse oscillator length
    l = sqrt(hbar / m_B omega); the factor l^(3-d) is absent for d = 3.
    """
    _require_dimension(d)
    if d == 3:
        ell_factor = 1.0
    else:
        omega = cond.transverse_frequency(d)
        if omega <= 0:
            raise ValueError(f"d={d} requires a positive transverse frequency")
        ell_factor = math.sqrt(HBAR / (cond.m_B * omega)) ** (3 - d)
    return SOLID_ANGLE[d] * HBAR**2 * cond.a3 / (cond.m_B * ell_factor)


def boson_density(cond: CondensateParams, d: int) -> float:
    """n_0,d = n01^d [1/m^d]."""
    _require_dimension(d)
    return cond.n01**d


def coherence_length(cond: CondensateParams, d: int) -> float:
    """xi_d = hbar / sqrt(2 g_B,d m_B n_0,d) [m]."""
    return HBAR / math.sqrt(2.0 * boson_coupling(cond, d) * cond.m_B * boson_density(cond, d))


def sound_speed(cond: CondensateParams, d: int) -> float:
    """c_d = hbar / (sqrt(2) m_B xi_d) [m/s]."""
    return HBAR / (math.sqrt(2.0) * cond.m_B * coherence_length(cond, d))


def cutoff_frequency(cond: CondensateParams, d: int) -> float:
    """Lambda_d = g_B,d n_0,d / hbar [rad/s]."""
    return boson_coupling(cond, d) * boson_density(cond, d) / HBAR


def characteristic_time_pow_d(cond: CondensateParams, imp: ImpurityParams, d: int) -> float:
    """tau_d^d [s^d]: prefactor of the low-frequency spectral density
    J_d(omega) = m_I tau_d^d omega^(d+2)."""
    _require_dimension(d)
    g = boson_coupling(cond, d)
    inner = cond.m_B / (g ** (d / (d + 2.0)) * boson_density(cond, d))
    return (SOLID_ANGLE[d] * imp.eta**2 / (2.0 * (2.0 * math.pi) ** d * imp.m_I)
            * inner ** ((d + 2.0) / 2.0))


def critical_coupling(cond: CondensateParams, d: int) -> float:
    """Froehlich-validity bound eta_c,d.

    Evaluates the scattering-length form
    eta_c,d = sqrt(2^(2-d) (2pi)^d / S_d) * n_0,d^((2-d)/2)
              * [l^(3-d) / (S_d a3)]^(d/2),
    which is algebraically identical to sqrt(4 (2pi)^d / S_d) n_0,d xi_d^d.
    """
    _require_dimension(d)
    if d == 3:
        ell_factor = 1.0
    else:
        omega = cond.transverse_frequency(d)
        if omega <= 0:
            raise ValueError(f"d={d} requires a positive transverse frequency")
        ell_factor = math.sqrt(HBAR / (cond.m_B * omega)) ** (3 - d)
    S = SOLID_ANGLE[d]
    return (math.sqrt(2.0 ** (2 - d) * (2.0 * math.pi) ** d / S)
            * boson_density(cond, d) ** ((2.0 - d) / 2.0)
            * (ell_factor / (S * cond.a3)) ** (d / 2.0))


def critical_coupling_xi_form(cond: CondensateParams, d: int) -> float:
    """Same bound through the (xi, c) route; used as a consistency oracle."""
    _require_dimension(d)
    S = SOLID_ANGLE[d]
    xi = coherence_length(cond, d)
    c = sound_speed(cond, d)
    return (HBAR * math.sqrt(2.0 * (2.0 * math.pi) ** d / S)
            * c * xi ** (d - 1) / boson_coupling(cond, d))


def derive_bath(cond: CondensateParams, imp: ImpurityParams, d: int) -> DerivedBath:
    """Populate every derived scale for dimension d."""
    _require_dimension(d)
    g = boson_coupling(cond, d)
    n = boson_density(cond, d)
    Lam = cutoff_frequency(cond, d)
    tau_pow = characteristic_time_pow_d(cond, imp, d)
    coupling_pow = Lam**d * tau_pow          # (Lambda_d tau_d)^d
    alpha = 1.0 + coupling_pow / d**2
    # tau_ds^d = eta^-2 tau_d^d is exactly the eta = 1 value; computing it
    # from the reference avoids the 0/0 at vanishing coupling.
    ref = ImpurityParams(m_I=imp.m_I, Omega=imp.Omega, eta=1.0)
    tau_s_pow = characteristic_time_pow_d(cond, ref, d)
    beta = Lam**d * tau_s_pow
    x_zpf = math.sqrt(HBAR / (2.0 * imp.m_I * imp.Omega)) if imp.Omega > 0 else None
    return DerivedBath(
        d=d,
        condensate=cond,
        impurity=imp,
        g_Bd=g,
        n0d=n,
        Lambda_d=Lam,
        tau_d_pow_d=tau_pow,
        tau_ds_pow_d=tau_s_pow,
        alpha_d=alpha,
        beta_d=beta,
        eta_c=critical_coupling(cond, d),
        xi=coherence_length(cond, d),
        c_sound=sound_speed(cond, d),
        omega0=HBAR * cond.n01**2 / imp.m_I,
        x_zpf=x_zpf,
    )


@dataclass(frozen=True)
class FrohlichCheck:
    """Outcome of the Froehlich-bound test; margin = eta_c - eta."""

    ok: bool
    eta: float
    eta_c: float

    @property
    def margin(self) -> float:
        return self.eta_c - self.eta


def check_frohlich(eta: float, eta_c: float) -> FrohlichCheck:
    """Strict inequality eta < eta_c; equality fails."""
    if eta < 0 or eta_c < 0:
        raise ValueError("eta and eta_c must be >= 0")
    return FrohlichCheck(ok=eta < eta_c, eta=eta, eta_c=eta_c)


def check_high_temperature(T: float, baths: list[DerivedBath] | tuple[DerivedBath, ...]) -> bool:
    """True iff k_B T >= hbar max_d Lambda_d over the supplied baths."""
    if T < 0:
        raise ValueError("temperature must be >= 0")
    if not baths:
        raise ValueError("at least one bath is required")
    return K_B * T >= HBAR * max(b.Lambda_d for b in baths)


def high_temperature_threshold(baths: list[DerivedBath] | tuple[DerivedBath, ...]) -> float:
    """Temperature [K] at which the high-temperature condition starts to hold."""
    return HBAR * max(b.Lambda_d for b in baths) / K_B
