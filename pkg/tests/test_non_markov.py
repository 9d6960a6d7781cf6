import math

import numpy as np
import pytest
from scipy.integrate import quad

from becpolaron import (backflow_delta, j_distance, non_markovianity_measure,
                        position_variance_ss, SpectralModel)
from becpolaron.non_markov import _delta_grid

from conftest import OMEGA_TRAP, trapped_bath

PERIOD = 2.0 * math.pi / OMEGA_TRAP


def t_scaled(Ts: float, bath) -> float:
    from becpolaron import HBAR, K_B
    return Ts * HBAR * bath.Omega / K_B


# ---------------------------------------------------------------------------
# backflow series
# ---------------------------------------------------------------------------

def test_delta_starts_at_zero():
    bath = trapped_bath(1, eta=1.0)
    assert backflow_delta(bath, 0.0, 0.0) == 0.0


def test_delta_vanishes_without_coupling():
    bath = trapped_bath(2, eta=0.0)
    for t in (0.1 * PERIOD, PERIOD, 5.0 * PERIOD):
        assert backflow_delta(bath, t, 0.0) == 0.0


def test_delta_against_brute_force_2d_quadrature():
    """Nested (s, w) quadrature with no analytic shortcut as the oracle."""
    bath = trapped_bath(1, eta=1.0)
    model = SpectralModel.bec_lowfreq(bath)
    from becpolaron import spectral_component_xx
    for t in (0.3 * PERIOD, 0.9 * PERIOD):
        def outer(s):
            val, _ = quad(lambda w: spectral_component_xx(model, w) * math.cos(w * s),
                          0.0, bath.Lambda_d, limit=200, epsabs=1e-300, epsrel=1e-11)
            return val * math.cos(bath.Omega * s)
        brute, _ = quad(outer, 0.0, t, limit=300, epsabs=1e-300, epsrel=1e-10)
        assert backflow_delta(bath, t, 0.0) == pytest.approx(brute, rel=1e-6)


def test_delta_grid_matches_pointwise_quadrature():
    bath = trapped_bath(2, eta=2.0)
    model = SpectralModel.bec_lowfreq(bath)
    ts = np.array([0.2, 0.7, 1.9, 6.4]) * PERIOD
    grid = _delta_grid(bath, ts, 0.0, bath.Omega, model)
    for t, g in zip(ts, grid):
        assert g == pytest.approx(backflow_delta(bath, float(t), 0.0), rel=1e-8)


def test_delta_at_zero_trap_frequency_totals_noise_integral():
    # Omega = 0 turns Delta into the running integral of nu; for the sharp
    # super-Ohmic kernel it stays finite (tends to zero) at large times
    bath = trapped_bath(1, eta=1.0)
    early = backflow_delta(bath, 0.5 / bath.Lambda_d, 0.0, Omega=0.0)
    late = backflow_delta(bath, 2000.0 / bath.Lambda_d, 0.0, Omega=0.0)
    assert math.isfinite(late)
    assert abs(late) < 0.05 * abs(early)


# ---------------------------------------------------------------------------
# accumulated measure
# ---------------------------------------------------------------------------

def test_measure_zero_without_coupling():
    bath = trapped_bath(1, eta=0.0)
    result = non_markovianity_measure(bath, 0.0)
    assert result.N == 0.0
    assert result.converged


def test_measure_positive_and_monotone_in_eta():
    for d in (1, 2):
        ns = []
        for eta in (0.5, 1.0, 2.0, 3.0):
            bath = trapped_bath(d, eta=eta)
            ns.append(non_markovianity_measure(bath, 0.0).N_scaled)
        assert all(n > 0 for n in ns)
        assert all(b > a for a, b in zip(ns, ns[1:]))


def test_measure_dimension_ratio():
    n1 = non_markovianity_measure(trapped_bath(1, eta=2.0), 0.0).N_scaled
    n2 = non_markovianity_measure(trapped_bath(2, eta=2.0), 0.0).N_scaled
    assert n2 / n1 >= 10.0
    assert n2 / n1 == pytest.approx(14.0, rel=0.1)  # regression guard


def test_measure_invariant_under_resolution_doubling():
    bath = trapped_bath(1, eta=2.0)
    n_64 = non_markovianity_measure(bath, 0.0, samples_per_period=64).N
    n_128 = non_markovianity_measure(bath, 0.0, samples_per_period=128).N
    assert n_128 == pytest.approx(n_64, rel=1e-2)


def test_measure_invariant_under_horizon_doubling():
    bath = trapped_bath(2, eta=1.5)
    n_20 = non_markovianity_measure(bath, 0.0, horizon=20.0 * PERIOD).N
    n_40 = non_markovianity_measure(bath, 0.0, horizon=40.0 * PERIOD).N
    assert n_40 == pytest.approx(n_20, rel=1e-2)


def test_measure_requires_trap():
    from conftest import free_bath
    with pytest.raises(ValueError):
        non_markovianity_measure(free_bath(1), 0.0)


# ---------------------------------------------------------------------------
# J-distance
# ---------------------------------------------------------------------------

def test_j_distance_identical_variances_is_zero():
    bath = trapped_bath(1, eta=1.0)
    v = position_variance_ss(bath, 0.0)
    assert abs(v - v) / (v + v) == 0.0


def test_j_distance_bounds_and_symmetry():
    bath = trapped_bath(2, eta=3.5)
    for Ts in (0.5, 2.0):
        jd = j_distance(bath, t_scaled(Ts, bath), gamma=10.0 * bath.Omega)
        assert 0.0 <= jd <= 1.0
    # symmetry of the normalised distance under swapping the two models
    model_b = SpectralModel.bec_lowfreq(bath)
    model_o = SpectralModel.ohmic(bath, 10.0 * bath.Omega)
    va = position_variance_ss(bath, 0.0, model_b)
    vb = position_variance_ss(bath, 0.0, model_o)
    assert abs(va - vb) / (va + vb) == abs(vb - va) / (vb + va)


def test_j_distance_dimension_ordering_low_temperature():
    for Ts in (0.5, 1.0):
        jds = {}
        for d in (1, 2, 3):
            bath = trapped_bath(d, eta=3.5)
            jds[d] = j_distance(bath, t_scaled(Ts, bath), gamma=10.0 * bath.Omega)
        assert jds[3] > jds[2] > jds[1]


def test_j_distance_decays_with_temperature():
    for d in (1, 2, 3):
        bath = trapped_bath(d, eta=3.5)
        low = j_distance(bath, t_scaled(0.5, bath), gamma=10.0 * bath.Omega)
        high = j_distance(bath, t_scaled(5.0, bath), gamma=10.0 * bath.Omega)
        assert high < low
        assert high < 0.05


def test_j_distance_rejects_bad_gamma():
    with pytest.raises(ValueError):
        j_distance(trapped_bath(1), 0.0, gamma=0.0)
