"""Deterministic path and atmospheric attenuation models.

* free-space path loss (spherical spreading),
* ITU-R P.838-3 specific rain attenuation, applied over a terrestrial path
  with the ITU-R P.530-17 distance factor,
* the Crane global rain model (exponential cell profile),
* ITU-R P.840 cloud/fog attenuation with the double-Debye permittivity
  of liquid water.

Frequencies in Hz, distances in m, losses in dB. Everything is vectorised
over numpy arrays; out-of-validity inputs raise instead of extrapolating.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ModelValidityError
from .units import SPEED_OF_LIGHT, _out, as_nonnegative, as_positive

HORIZONTAL = 0.0
CIRCULAR = 45.0
VERTICAL = 90.0

RAIN_F_MIN_HZ = 1e9
RAIN_F_MAX_HZ = 1e12
FOG_F_MIN_HZ = 10e9
FOG_F_MAX_HZ = 1e12
CRANE_MAX_DISTANCE_M = 22_500.0


def fspl(f_hz, d_m):
    """Free-space path loss 20 log10(4 pi d f / c) in dB."""
    f = as_positive("frequency", f_hz)
    d = as_positive("distance", d_m)
    return _out(20.0 * np.log10(4.0 * np.pi * d * f / SPEED_OF_LIGHT))


# ---------------------------------------------------------------------------
# Rain

@dataclass(frozen=True)
class RainCoefficients:
    """Power-law pair of the specific attenuation gamma = k * R**alpha (dB/km)."""

    k: float
    alpha: float

    def __post_init__(self):
        k = np.asarray(self.k)
        a = np.asarray(self.alpha)
        if np.any(k <= 0) or np.any(a <= 0) or np.any(a >= 2):
            raise DomainError(f"invalid rain coefficients k={self.k!r}, alpha={self.alpha!r}")

    def specific_attenuation(self, rain_rate_mm_h):
        """dB/km for the given rain rate."""
        r = as_nonnegative("rain rate", rain_rate_mm_h)
        return _out(self.k * r ** self.alpha)


# ITU-R P.838-3 Tables 1-4: (a_j, b_j, c_j) triples, then (m, c).
_P838 = {
    # Table 1, k_H
    "kH": (
        ((-5.33980, -0.10008, 1.13098),
         (-0.35351, 1.26970, 0.45400),
         (-0.23789, 0.86036, 0.15354),
         (-0.94158, 0.64552, 0.16817)),
        (-0.18961, 0.71147),
    ),
    # Table 2, k_V
    "kV": (
        ((-3.80595, 0.56934, 0.81061),
         (-3.44965, -0.22911, 0.51059),
         (-0.39902, 0.73042, 0.11899),
         (0.50167, 1.07319, 0.27195)),
        (-0.16398, 0.63297),
    ),
    # Table 3, alpha_H
    "aH": (
        ((-0.14318, 1.82442, -0.55187),
         (0.29591, 0.77564, 0.19822),
         (0.32177, 0.63773, 0.13164),
         (-5.37610, -0.96230, 1.47828),
         (16.1721, -3.29980, 3.43990)),
        (0.67849, -1.95537),
    ),
    # Table 4, alpha_V
    "aV": (
        ((-0.07771, 2.33840, -0.76284),
         (0.56727, 0.95545, 0.54039),
         (-0.20238, 1.14520, 0.26809),
         (-48.2991, 0.791669, 0.116226),
         (48.5833, 0.791459, 0.116479)),
        (-0.053739, 0.83433),
    ),
}


def _p838_fit(name: str, log_f_ghz: np.ndarray) -> np.ndarray:
    terms, (m, c) = _P838[name]
    total = m * log_f_ghz + c
    for a, b, w in terms:
        total = total + a * np.exp(-(((log_f_ghz - b) / w) ** 2))
    return total


def _check_rain_frequency(f_hz) -> np.ndarray:
    f = as_positive("frequency", f_hz)
    if np.any(f < RAIN_F_MIN_HZ) or np.any(f > RAIN_F_MAX_HZ):
        raise ModelValidityError("rain models are valid between 1 GHz and 1 THz")
    return f


def _check_angle(name: str, deg) -> np.ndarray:
    a = np.asarray(deg, dtype=float)
    if not np.all(np.isfinite(a)) or np.any(a < 0) or np.any(a > 90):
        raise DomainError(f"{name} must lie in [0, 90] degrees, got {deg!r}")
    return a


def rain_coefficients(f_hz, tilt_deg=HORIZONTAL, elevation_deg=0.0) -> RainCoefficients:
    """k and alpha for arbitrary polarisation tilt and path elevation."""
    f = _check_rain_frequency(f_hz)
    tau = np.radians(_check_angle("polarization tilt", tilt_deg))
    theta = np.radians(_check_angle("elevation", elevation_deg))
    lf = np.log10(f / 1e9)
    k_h = 10.0 ** _p838_fit("kH", lf)
    k_v = 10.0 ** _p838_fit("kV", lf)
    a_h = _p838_fit("aH", lf)
    a_v = _p838_fit("aV", lf)
    # the combination formulas only reduce to the H/V pair up to rounding,
    # so the pure-polarisation cases are selected explicitly
    mix = np.cos(theta) ** 2 * np.cos(2.0 * tau)
    k = np.where(mix == 1.0, k_h, np.where(mix == -1.0, k_v, (k_h + k_v + (k_h - k_v) * mix) / 2.0))
    kah, kav = k_h * a_h, k_v * a_v
    alpha = np.where(
        mix == 1.0, a_h,
        np.where(mix == -1.0, a_v, (kah + kav + (kah - kav) * mix) / (2.0 * k)),
    )
    return RainCoefficients(k=_out(k), alpha=_out(alpha))


def rain_distance_factor(f_hz, rain_rate_mm_h, d_m, alpha):
    """ITU-R P.530-17 distance factor r; effective path = r * d, r capped at 2.5."""
    f_ghz = np.asarray(f_hz, dtype=float) / 1e9
    d_km = np.asarray(d_m, dtype=float) / 1e3
    rate = np.asarray(rain_rate_mm_h, dtype=float)
    denom = (0.477 * d_km ** 0.633 * rate ** (0.073 * np.asarray(alpha)) * f_ghz ** 0.123
             - 10.579 * (1.0 - np.exp(-0.024 * d_km)))
    with np.errstate(divide="ignore"):
        return _out(np.where(denom < 0.4, 2.5, 1.0 / np.where(denom < 0.4, 1.0, denom)))


def itu_rain_attenuation(f_hz, rain_rate_mm_h, d_m, tilt_deg=HORIZONTAL, elevation_deg=0.0,
                         distance_factor=True):
    """Rain loss over a path of length ``d_m``.

    With ``distance_factor`` (the default) the path is scaled by the
    P.530-17 factor, as radar toolboxes do for a terrestrial link; without
    it the result is the specific attenuation times the geometric length,
    exactly linear in distance.
    """
    f = _check_rain_frequency(f_hz)
    rate = as_nonnegative("rain rate", rain_rate_mm_h)
    d = as_nonnegative("distance", d_m)
    coeffs = rain_coefficients(f, tilt_deg, elevation_deg)
    gamma = np.asarray(coeffs.specific_attenuation(rate))
    length_km = d / 1e3
    if distance_factor:
        with np.errstate(divide="ignore", invalid="ignore"):
            r = rain_distance_factor(f, np.maximum(rate, 1e-300), np.maximum(d, 1e-300), coeffs.alpha)
        length_km = length_km * r
    loss = np.where((rate == 0) | (d == 0), 0.0, gamma * length_km)
    return _out(loss)


def _exprel(x):
    """(exp(x) - 1) / x, equal to 1 at x = 0."""
    x = np.asarray(x, dtype=float)
    safe = np.where(x == 0, 1.0, x)
    return np.where(x == 0, 1.0, np.expm1(safe) / safe)


def crane_parameters(rain_rate_mm_h):
    """Empirical (delta_km, b, c, u) of the Crane global model."""
    rate = as_positive("rain rate", rain_rate_mm_h)
    ln_r = np.log(rate)
    delta = 3.8 - 0.6 * ln_r
    if np.any(delta <= 0):
        raise ModelValidityError("rain rate too high for the Crane model (delta <= 0)")
    b = 2.3 * rate ** -0.17
    c = 0.026 - 0.03 * ln_r
    u = (np.log(b) + c * delta) / delta
    return _out(delta), _out(b), _out(c), _out(u)


def crane_rain_attenuation(f_hz, rain_rate_mm_h, d_m, tilt_deg=HORIZONTAL):
    """Crane global model rain loss for a horizontal path up to 22.5 km."""
    f = _check_rain_frequency(f_hz)
    rate = as_nonnegative("rain rate", rain_rate_mm_h)
    d = as_nonnegative("distance", d_m)
    if np.any(d > CRANE_MAX_DISTANCE_M):
        raise ModelValidityError("Crane model is valid for paths up to 22.5 km")
    rate, d, f = np.broadcast_arrays(rate, d, f)
    wet = rate > 0
    out = np.zeros(rate.shape)
    if np.any(wet):
        rw, dw, fw = rate[wet], d[wet] / 1e3, f[wet]
        coeffs = rain_coefficients(fw, tilt_deg, 0.0)
        gamma = np.asarray(coeffs.specific_attenuation(rw))
        beta = np.asarray(coeffs.alpha)
        delta, b, c, u = (np.asarray(v) for v in crane_parameters(rw))
        near = gamma * dw * _exprel(u * beta * dw)
        core = gamma * delta * _exprel(u * beta * delta)
        # b^beta (e^{c beta D} - e^{c beta delta}) / (c beta), written to survive c = 0
        tail = gamma * b ** beta * np.exp(c * beta * delta) * (dw - delta) * _exprel(c * beta * (dw - delta))
        out[wet] = np.where(dw <= delta, near, core + tail)
    return _out(out)


# ---------------------------------------------------------------------------
# Fog

@dataclass(frozen=True)
class FogConditions:
    temperature_c: float = 15.0
    water_density_g_m3: float = 0.05

    def __post_init__(self):
        if not -20.0 <= self.temperature_c <= 60.0:
            raise DomainError(f"fog temperature must lie in [-20, 60] C, got {self.temperature_c}")
        if not 0.0 <= self.water_density_g_m3 <= 10.0:
            raise DomainError(
                f"liquid water density must lie in [0, 10] g/m3, got {self.water_density_g_m3}")


def water_permittivity(f_hz, temperature_c):
    """Double-Debye complex permittivity of liquid water, returned as (eps', eps'')."""
    f = as_positive("frequency", f_hz) / 1e9
    theta = 300.0 / (np.asarray(temperature_c, dtype=float) + 273.15)
    eps0 = 77.66 + 103.3 * (theta - 1.0)
    eps1 = 0.0671 * eps0
    eps2 = 3.52
    fp = 20.20 - 146.0 * (theta - 1.0) + 316.0 * (theta - 1.0) ** 2
    fs = 39.8 * fp
    rp = 1.0 + (f / fp) ** 2
    rs = 1.0 + (f / fs) ** 2
    eps_im = f * (eps0 - eps1) / (fp * rp) + f * (eps1 - eps2) / (fs * rs)
    eps_re = (eps0 - eps1) / rp + (eps1 - eps2) / rs + eps2
    return _out(eps_re), _out(eps_im)


def fog_specific_attenuation(f_hz, temperature_c=15.0):
    """Specific attenuation coefficient K_l in (dB/km)/(g/m3)."""
    f = as_positive("frequency", f_hz)
    if np.any(f < FOG_F_MIN_HZ) or np.any(f > FOG_F_MAX_HZ):
        raise ModelValidityError("fog model is valid between 10 GHz and 1 THz")
    eps_re, eps_im = water_permittivity(f, temperature_c)
    eta = (2.0 + eps_re) / eps_im
    return _out(0.819 * (f / 1e9) / (eps_im * (1.0 + eta ** 2)))


def fog_attenuation(f_hz, cond: FogConditions, d_m):
    """Fog loss in dB: K_l * M * d_km."""
    d = as_nonnegative("distance", d_m)
    k_l = fog_specific_attenuation(f_hz, cond.temperature_c)
    return _out(k_l * cond.water_density_g_m3 * d / 1e3)
