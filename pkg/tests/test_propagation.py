import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from thzlink.errors import DomainError, ModelValidityError
from thzlink.propagation import (
    CIRCULAR, HORIZONTAL, VERTICAL, FogConditions, RainCoefficients, crane_parameters,
    crane_rain_attenuation, fog_attenuation, fog_specific_attenuation, fspl, itu_rain_attenuation,
    rain_coefficients, water_permittivity,
)

freqs = st.floats(min_value=1e8, max_value=1e13)
dists = st.floats(min_value=1e-2, max_value=1e6)
rain_freqs = st.floats(min_value=1e9, max_value=1e12)


# --- free space ------------------------------------------------------------

@pytest.mark.parametrize("f, d, expected, tol", [
    (1e9, 1000.0, 92.4478, 1e-3),
    (1e9, 0.023856, 0.0, 1e-3),  # R = lambda / 4 pi
    (1e12, 1000.0, 152.4478, 1e-3),
    (10e9, 50.0, 86.4272, 1e-3),
])
def test_fspl_examples(f, d, expected, tol):
    assert fspl(f, d) == pytest.approx(expected, abs=tol)


@pytest.mark.parametrize("f, d", [(0, 1), (1e9, 0), (-1e9, 10), (1e9, -1)])
def test_fspl_rejects_non_positive(f, d):
    with pytest.raises(DomainError):
        fspl(f, d)


@given(freqs, dists, st.floats(1e-3, 1e3))
def test_fspl_scaling_law(f, d, a):
    assert fspl(a * f, d) == pytest.approx(fspl(f, a * d), abs=1e-9)


@given(freqs, dists)
def test_fspl_doubling_distance(f, d):
    assert fspl(f, 2 * d) - fspl(f, d) == pytest.approx(20 * math.log10(2), abs=1e-6)


def test_fspl_strictly_increasing():
    f = np.geomspace(1e9, 1e12, 50)
    assert np.all(np.diff(fspl(f, 100.0)) > 0)
    assert np.all(np.diff(fspl(1e11, np.geomspace(1, 1e4, 50))) > 0)


# --- rain coefficients -------------------------------------------------------

# Published P.838-3 table rows (kH, aH, kV, aV), an independent check of the
# regression implementation.
P838_TABLE = {
    1e9: (0.0000259, 0.9691, 0.0000308, 0.8592),
    10e9: (0.01217, 1.2571, 0.01129, 1.2156),
}


@pytest.mark.parametrize("f", sorted(P838_TABLE))
def test_rain_coefficients_match_published_rows(f):
    kh, ah, kv, av = P838_TABLE[f]
    h = rain_coefficients(f, HORIZONTAL)
    v = rain_coefficients(f, VERTICAL)
    assert h.k == pytest.approx(kh, rel=2e-3)
    assert h.alpha == pytest.approx(ah, abs=1e-4)
    assert v.k == pytest.approx(kv, rel=2e-3)
    assert v.alpha == pytest.approx(av, abs=1e-4)


def test_rain_coefficients_100ghz():
    c = rain_coefficients(100e9)
    assert c.k == pytest.approx(1.3671, rel=1e-3)
    assert c.alpha == pytest.approx(0.6815, abs=1e-3)


@given(rain_freqs)
def test_rain_coefficients_reduce_to_pure_polarisations(f):
    lf = math.log10(f / 1e9)
    # direct evaluation of the kH/aH fit, independent of the combination step
    kh = 10 ** (sum(a * math.exp(-(((lf - b) / c) ** 2)) for a, b, c in [
        (-5.33980, -0.10008, 1.13098), (-0.35351, 1.26970, 0.45400),
        (-0.23789, 0.86036, 0.15354), (-0.94158, 0.64552, 0.16817)]) - 0.18961 * lf + 0.71147)
    h = rain_coefficients(f, 0.0, 0.0)
    assert h.k == pytest.approx(kh, rel=1e-12)
    from thzlink.propagation import _p838_fit
    assert h.k == 10.0 ** _p838_fit("kH", np.log10(f / 1e9))
    assert h.alpha == _p838_fit("aH", np.log10(f / 1e9))
    v = rain_coefficients(f, 90.0, 0.0)
    assert v.k == 10.0 ** _p838_fit("kV", np.log10(f / 1e9))
    assert v.alpha == _p838_fit("aV", np.log10(f / 1e9))


@given(rain_freqs, st.floats(0, 90))
def test_rain_coefficients_at_zenith_average(f, tau):
    h = rain_coefficients(f, HORIZONTAL)
    v = rain_coefficients(f, VERTICAL)
    z = rain_coefficients(f, tau, 90.0)
    assert z.k == pytest.approx((h.k + v.k) / 2, rel=1e-12)


def test_circular_between_h_and_v():
    for f in (5e9, 50e9, 500e9):
        ks = sorted([rain_coefficients(f, HORIZONTAL).k, rain_coefficients(f, VERTICAL).k])
        assert ks[0] <= rain_coefficients(f, CIRCULAR).k <= ks[1]


@pytest.mark.parametrize("f", [0.5e9, 1.5e12])
def test_rain_frequency_validity(f):
    with pytest.raises(ModelValidityError):
        rain_coefficients(f)
    with pytest.raises(ModelValidityError):
        itu_rain_attenuation(f, 10, 1000)
    with pytest.raises(ModelValidityError):
        crane_rain_attenuation(f, 10, 1000)


@pytest.mark.parametrize("k, a", [(0, 1), (1, 0), (1, 2), (-1, 1)])
def test_rain_coefficients_invariants(k, a):
    with pytest.raises(DomainError):
        RainCoefficients(k, a)


# --- ITU rain ----------------------------------------------------------------

def test_itu_rain_without_distance_factor_is_gamma_times_length():
    assert itu_rain_attenuation(1e9, 1, 1000, distance_factor=False) == pytest.approx(2.5893e-5, rel=1e-3)
    c = rain_coefficients(300e9)
    assert itu_rain_attenuation(300e9, 12.5, 2500, distance_factor=False) == pytest.approx(
        c.k * 12.5 ** c.alpha * 2.5, rel=1e-12)


def test_itu_rain_distance_factor_values():
    # P.530-17: r = 1 / (0.477 d^0.633 R^(0.073 a) f^0.123 - 10.579 (1 - exp(-0.024 d))), r <= 2.5
    c = rain_coefficients(1e12)
    denom = 0.477 * 20 ** (0.073 * c.alpha) * 1000 ** 0.123 - 10.579 * (1 - math.exp(-0.024))
    expected = c.k * 20 ** c.alpha / denom
    assert itu_rain_attenuation(1e12, 20, 1000) == pytest.approx(expected, rel=1e-12)
    # at 1 GHz / 1 km the factor saturates at 2.5
    assert itu_rain_attenuation(1e9, 1, 1000) == pytest.approx(2.5 * rain_coefficients(1e9).k, rel=1e-12)


def test_itu_rain_reference_endpoints():
    assert itu_rain_attenuation(1e9, 1, 1000) == pytest.approx(6.5e-5, rel=0.05)
    assert itu_rain_attenuation(1e9, 20, 1000) == pytest.approx(1.2e-3, rel=0.05)
    assert itu_rain_attenuation(1e12, 1, 1000) == pytest.approx(1.6, rel=0.05)
    assert itu_rain_attenuation(1e12, 20, 1000) == pytest.approx(9.7, rel=0.25)


@pytest.mark.parametrize("distance_factor", [True, False])
def test_itu_rain_zero_cases(distance_factor):
    assert itu_rain_attenuation(50e9, 0, 1000, distance_factor=distance_factor) == 0
    assert itu_rain_attenuation(50e9, 10, 0, distance_factor=distance_factor) == 0


@settings(max_examples=60)
@given(rain_freqs, st.floats(0.1, 150), st.floats(1.01, 5), st.floats(10, 10_000))
def test_itu_rain_increasing_in_rate(f, r, factor, d):
    for df in (True, False):
        assert itu_rain_attenuation(f, r * factor, d, distance_factor=df) > \
            itu_rain_attenuation(f, r, d, distance_factor=df)


@given(rain_freqs, st.floats(0.1, 150), st.floats(1, 20_000), st.floats(0.01, 10))
def test_itu_rain_linear_in_distance_without_factor(f, r, d, a):
    one = itu_rain_attenuation(f, r, d, distance_factor=False)
    assert itu_rain_attenuation(f, r, a * d, distance_factor=False) == pytest.approx(a * one, rel=1e-12)


# --- Crane ----------------------------------------------------------------

def crane_by_quadrature(f, rate, d_m, tilt=HORIZONTAL):
    """Integrate the Crane rain-rate profile along the path numerically."""
    c = rain_coefficients(f, tilt)
    gamma, beta = c.k * rate ** c.alpha, c.alpha
    delta, b, cc, u = crane_parameters(rate)
    d_km = d_m / 1e3

    def profile(x):
        return math.exp(u * beta * x) if x <= delta else b ** beta * math.exp(cc * beta * x)

    pts = [delta] if 0 < delta < d_km else None
    val, _ = quad(profile, 0.0, d_km, points=pts, epsabs=0, epsrel=1e-12, limit=200)
    return gamma * val


@pytest.mark.parametrize("f, rate, d", [
    (1e12, 20, 1000), (1e9, 1, 1000), (30e9, 4, 5000), (100e9, 50, 15_000),
    (300e9, 2.3788, 8000), (10e9, 150, 22_500),
])
def test_crane_matches_quadrature(f, rate, d):
    assert crane_rain_attenuation(f, rate, d) == pytest.approx(crane_by_quadrature(f, rate, d), rel=1e-9)


def test_crane_heavy_rain_1thz():
    # first branch: D = 1 km < delta(20) = 2.0 km
    delta = crane_parameters(20)[0]
    assert delta == pytest.approx(2.0025, abs=1e-3)
    assert crane_rain_attenuation(1e12, 20, 1000) == pytest.approx(9.672, abs=2e-3)


def test_crane_light_rain_anchor():
    val = crane_rain_attenuation(1e9, 1, 1000)
    assert 3e-6 <= val <= 3e-4  # reference ~3e-5 dB, read from a log plot
    assert val == pytest.approx(3e-5, rel=0.1)


def test_crane_zero_and_limits():
    assert crane_rain_attenuation(50e9, 0, 1000) == 0
    assert crane_rain_attenuation(50e9, 10, 0) == 0
    with pytest.raises(ModelValidityError):
        crane_rain_attenuation(50e9, 10, 22_600)


@given(st.floats(0.2, 200), rain_freqs)
def test_crane_continuous_at_knot(rate, f):
    delta_m = crane_parameters(rate)[0] * 1e3
    eps = delta_m * 1e-9
    below = crane_rain_attenuation(f, rate, delta_m - eps)
    above = crane_rain_attenuation(f, rate, delta_m + eps)
    at = crane_rain_attenuation(f, rate, delta_m)
    assert abs(above - below) < 1e-6
    assert abs(at - below) < 1e-6


def test_itu_and_crane_same_order_at_1km():
    f = np.geomspace(1e9, 1e12, 200)
    for rate in (1, 4, 20):
        ratio = itu_rain_attenuation(f, rate, 1000) / crane_rain_attenuation(f, rate, 1000)
        assert np.all((ratio > 1 / 3) & (ratio < 3))


def test_crane_can_exceed_itu_at_long_range_high_frequency():
    assert crane_rain_attenuation(1e12, 20, 20_000) > itu_rain_attenuation(1e12, 20, 20_000)


# --- fog -------------------------------------------------------------------

def fog_coefficient_oracle(f_hz, t_c):
    """Rayleigh absorption from the complex double-Debye permittivity."""
    f = f_hz / 1e9
    theta = 300 / (t_c + 273.15)
    e0 = 77.66 + 103.3 * (theta - 1)
    e1 = 0.0671 * e0
    e2 = 3.52
    fp = 20.20 - 146 * (theta - 1) + 316 * (theta - 1) ** 2
    fs = 39.8 * fp
    eps = (e0 - e1) / (1 + 1j * f / fp) + (e1 - e2) / (1 + 1j * f / fs) + e2
    k_cm = (eps - 1) / (eps + 2)
    return 0.819 / 3 * f * -k_cm.imag


@pytest.mark.parametrize("f", [10e9, 35e9, 94e9, 140e9, 300e9, 650e9, 1e12])
@pytest.mark.parametrize("t", [-8.0, 0.0, 15.0, 30.0])
def test_fog_coefficient_matches_complex_oracle(f, t):
    assert fog_specific_attenuation(f, t) == pytest.approx(fog_coefficient_oracle(f, t), rel=1e-12)


def test_fog_coefficient_reference_values():
    assert fog_specific_attenuation(10e9, 15) == pytest.approx(0.06, rel=0.02)
    assert fog_specific_attenuation(1e12, 15) == pytest.approx(40, rel=0.02)


def test_water_permittivity_static_limit():
    eps_re, eps_im = water_permittivity(1e6, 20.0)
    theta = 300 / 293.15
    assert eps_re == pytest.approx(77.66 + 103.3 * (theta - 1), rel=1e-6)
    assert eps_im < 0.1


def test_fog_coefficient_increasing():
    f = np.geomspace(10e9, 1e12, 400)
    assert np.all(np.diff(fog_specific_attenuation(f, 15.0)) > 0)


@pytest.mark.parametrize("f", [9e9, 1.1e12])
def test_fog_validity(f):
    with pytest.raises(ModelValidityError):
        fog_specific_attenuation(f)


def test_fog_reference_endpoints():
    heavy = FogConditions(15.0, 0.5)
    assert fog_attenuation(10e9, heavy, 100) == pytest.approx(0.003, rel=0.30)
    assert fog_attenuation(1e12, heavy, 100) == pytest.approx(2.0, rel=0.30)
    light = FogConditions(15.0, 0.01)
    assert fog_attenuation(10e9, light, 100) == pytest.approx(6e-5, rel=0.30)
    assert fog_attenuation(1e12, light, 100) == pytest.approx(0.04, rel=0.30)


def test_fog_no_water():
    assert fog_attenuation(300e9, FogConditions(15.0, 0.0), 500) == 0


# zero or normal magnitudes: subnormal products underflow and carry no physics
water = st.one_of(st.just(0.0), st.floats(1e-6, 10))
path = st.one_of(st.just(0.0), st.floats(1e-3, 1e5))


@given(st.floats(10e9, 1e12), st.floats(-20, 60), water, path)
def test_fog_bilinear(f, t, m, d):
    unit = fog_attenuation(f, FogConditions(t, 1.0), 1000.0)
    assert fog_attenuation(f, FogConditions(t, m), d) == pytest.approx(m * d / 1000 * unit, rel=1e-9, abs=0)


@pytest.mark.parametrize("t, m", [(-21, 0.1), (61, 0.1), (15, -0.1), (15, 11)])
def test_fog_conditions_invariants(t, m):
    with pytest.raises(DomainError):
        FogConditions(t, m)
