import math

import numpy as np
import pytest

from becpolaron import (HBAR, K_B, InitialState, RegimeWarning, energy,
                        energy_classical, energy_steady_t0, ht_peak,
                        msd_brute_force, msd_numeric,
                        superdiffusion_coefficient, superdiffusion_ht_beta_form)

from conftest import M_IMPURITY, free_bath, trapped_bath

T_FIG2 = 0.15e-6  # sweep temperature for the coefficient curves


# ---------------------------------------------------------------------------
# mean squared displacement
# ---------------------------------------------------------------------------

def test_msd_starts_at_zero():
    bath = free_bath(1)
    out = msd_numeric(bath, InitialState(), np.array([0.0, 1e-9]), T=0.0)
    assert out.values[0] == 0.0
    assert out.values[1] >= 0.0


@pytest.mark.parametrize("d", [1, 2, 3])
def test_msd_low_temperature_ballistic_coefficient(d):
    bath = free_bath(d)
    v2_0 = 1e-6
    t = 2000.0 / bath.omega0
    out = msd_numeric(bath, InitialState(v2_0=v2_0), np.array([t]), T=0.0)
    expected = (v2_0 / bath.alpha_d**2
                + superdiffusion_coefficient(bath, "LT", 0.0)) * t * t
    assert out.values[0] == pytest.approx(expected, rel=5e-3)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_msd_log_slope_is_two(d):
    bath = free_bath(d)
    ts = np.geomspace(300.0, 3000.0, 9) / bath.omega0
    out = msd_numeric(bath, InitialState(), ts, T=0.0)
    slope = np.polyfit(np.log(ts), np.log(out.values), 1)[0]
    assert slope == pytest.approx(2.0, abs=0.02)


def test_msd_monotone():
    bath = free_bath(2)
    ts = np.linspace(1.0, 400.0, 60) / bath.omega0
    out = msd_numeric(bath, InitialState(), ts, T=0.0)
    assert (np.diff(out.values) >= 0).all()


def test_msd_matches_brute_force_double_integral():
    bath = free_bath(1)
    for t in (20.0 / bath.omega0, 60.0 / bath.omega0):
        fast = msd_numeric(bath, InitialState(), np.array([t]), T=0.0).values[0]
        brute = msd_brute_force(bath, t, T=0.0, n_time=400)
        assert fast == pytest.approx(brute, rel=2e-3)


def test_msd_requires_untrapped():
    with pytest.raises(ValueError):
        msd_numeric(trapped_bath(1), InitialState(), np.array([1e-4]), T=0.0)


# ---------------------------------------------------------------------------
# superdiffusion coefficients
# ---------------------------------------------------------------------------

def test_superdiffusion_zero_coupling():
    bath = free_bath(1, eta=0.0)
    assert superdiffusion_coefficient(bath, "LT", 0.0) == 0.0
    with pytest.warns(RegimeWarning):
        assert superdiffusion_coefficient(bath, "HT", 1e-9) == 0.0


@pytest.mark.filterwarnings("ignore::becpolaron.free_dynamics.RegimeWarning")
@pytest.mark.parametrize("d", [1, 2, 3])
def test_superdiffusion_beta_form_identity(d):
    for eta in (0.4, 1.0, 2.5):
        bath = free_bath(d, eta=eta)
        direct = superdiffusion_coefficient(bath, "HT", T_FIG2)
        via_beta = superdiffusion_ht_beta_form(bath, eta, T_FIG2)
        assert direct == pytest.approx(via_beta, rel=1e-12)


def test_superdiffusion_linear_in_temperature():
    bath = free_bath(2)
    d1 = superdiffusion_coefficient(bath, "HT", 2e-7)
    d2 = superdiffusion_coefficient(bath, "HT", 4e-7)
    assert d2 == pytest.approx(2.0 * d1, rel=1e-12)


def test_superdiffusion_ht_warns_below_threshold():
    bath = free_bath(2)  # k_B T < hbar Lambda_2 at 0.15 uK
    with pytest.warns(RegimeWarning):
        superdiffusion_coefficient(bath, "HT", T_FIG2)


# ---------------------------------------------------------------------------
# high-temperature peak
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("d", [1, 2, 3])
def test_ht_peak_value(d):
    bath = free_bath(d)
    peak = ht_peak(bath, T_FIG2)
    assert peak.D_max == pytest.approx(K_B * T_FIG2 / (2.0 * M_IMPURITY), rel=1e-14)
    assert superdiffusion_ht_beta_form(bath, peak.eta_max, T_FIG2) == pytest.approx(
        peak.D_max, rel=1e-12)


def test_ht_peak_frozen_value():
    # k_B * 0.15 uK / (2 m_I) for the K impurity
    peak = ht_peak(free_bath(1), T_FIG2)
    assert peak.D_max == pytest.approx(1.5949152526970318e-5, rel=1e-12)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_ht_peak_bracketed_by_grid_search(d):
    bath = free_bath(d)
    peak = ht_peak(bath, T_FIG2)
    etas = np.linspace(0.05, 3.0 * peak.eta_max, 1000)
    vals = np.array([superdiffusion_ht_beta_form(bath, float(e), T_FIG2) for e in etas])
    assert etas[int(np.argmax(vals))] == pytest.approx(peak.eta_max, rel=1e-2)
    # unimodal: the discrete derivative changes sign exactly once
    signs = np.sign(np.diff(vals))
    changes = np.count_nonzero(np.diff(signs))
    assert changes == 1


def test_ht_coefficient_vanishing_limits():
    bath = free_bath(1)
    lo = superdiffusion_ht_beta_form(bath, 1e-6, T_FIG2)
    hi = superdiffusion_ht_beta_form(bath, 1e6, T_FIG2)
    mid = superdiffusion_ht_beta_form(bath, ht_peak(bath, T_FIG2).eta_max, T_FIG2)
    assert lo < 1e-6 * mid and hi < 1e-6 * mid


# ---------------------------------------------------------------------------
# average kinetic energy
# ---------------------------------------------------------------------------

def test_energy_initial_value_is_initial_energy():
    # the transient term cancels the steady term at t = 0, leaving only the
    # kinetic energy of the initial state (the bath has not acted yet)
    bath = free_bath(1)
    v2_0 = 1e-5
    out = energy(bath, InitialState(v2_0=v2_0), np.array([0.0]), T=0.0)
    e_init = M_IMPURITY * v2_0 / (2.0 * bath.alpha_d**2)
    assert out.values[0] == pytest.approx(e_init, rel=1e-12)


def test_energy_closed_vs_numeric():
    bath = free_bath(1)
    ts = np.linspace(0.5, 60.0, 20) / bath.Lambda_d
    closed = energy(bath, InitialState(), ts, T=0.0, method="closed_T0")
    numeric = energy(bath, InitialState(), ts, T=0.0, method="numeric")
    np.testing.assert_allclose(closed.values, numeric.values, rtol=1e-3)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_energy_settles_to_steady_state(d):
    bath = free_bath(d)
    e_ss = energy_steady_t0(bath)
    window = np.linspace(300.0, 400.0, 40) / bath.Lambda_d
    out = energy(bath, InitialState(), window, T=0.0)
    assert np.mean(out.values) == pytest.approx(e_ss, rel=2e-2)


def test_energy_backflow_is_nonmonotone():
    bath = free_bath(1)
    ts = np.linspace(0.05, 12.0, 240) / bath.Lambda_d
    out = energy(bath, InitialState(), ts, T=0.0)
    diffs = np.sign(np.diff(out.values))
    # at least one local maximum followed by a local minimum
    assert np.count_nonzero(np.diff(diffs)) >= 2


def test_energy_closed_rejects_finite_temperature():
    with pytest.raises(ValueError):
        energy(free_bath(1), InitialState(), np.array([1e-4]), T=1e-7,
               method="closed_T0")


# ---------------------------------------------------------------------------
# classical steady state
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("d", [1, 2, 3])
def test_classical_energy_peak_is_equipartition(d):
    bath = free_bath(d)
    eta_max = ht_peak(bath, T_FIG2).eta_max
    out = energy_classical(bath, np.array([0.0, eta_max]), T_FIG2)
    assert out.values[0] == 0.0
    assert out.values[1] == pytest.approx(K_B * T_FIG2 / 2.0, rel=1e-12)


def test_classical_energy_over_diffusion_is_mass():
    bath = free_bath(2)
    etas = np.linspace(0.05, 4.0, 100)
    e = energy_classical(bath, etas, T_FIG2).values
    d = np.array([superdiffusion_ht_beta_form(bath, float(x), T_FIG2) for x in etas])
    ratios = e / d
    assert np.max(np.abs(ratios / M_IMPURITY - 1.0)) < 1e-10
