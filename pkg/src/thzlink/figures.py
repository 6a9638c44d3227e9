"""Builders for the figure tables: free-space loss, rain, fog, SNR, coverage.

Defaults reproduce the reference figure set; every argument can be
overridden from the CLI.
"""

from __future__ import annotations

from typing import Sequence

from .channel import AbsorptionTable
from .coverage import DEFAULT_TRIALS, DeploymentConfig, coverage_sweep
from .link_budget import (
    FIG2_DISTANCES_M, MMWAVE_CARRIERS_HZ, THZ_CARRIERS_HZ, default_link, snr_sweep,
)
from .propagation import (
    HORIZONTAL, FogConditions, crane_rain_attenuation, fog_attenuation, fspl, itu_rain_attenuation,
)
from .sweep import SweepTable
from .units import log_space_grid

RAIN_RATES_MM_H = (1.0, 4.0, 20.0)  # light, medium, heavy
FOG_DENSITIES_G_M3 = (0.01, 0.05, 0.5)  # light, medium, heavy
FOG_TEMPERATURE_C = 15.0
FSPL_RANGES_M = (50.0, 1000.0)
COVERAGE_CONFIGS = (
    (40e9, 16, 4),
    (400e9, 16, 4),
    (400e9, 1024, 256),
    (2e12, 1024, 256),
)
COVERAGE_DENSITIES = (1.0, 3.0, 10.0, 30.0, 80.0, 100.0, 300.0, 1000.0)


def _g(v: float) -> str:
    return f"{v:g}"


def fspl_table(f_min=1e9, f_max=1e12, ranges=FSPL_RANGES_M, points=200) -> SweepTable:
    f = log_space_grid(f_min, f_max, points)
    cols = {f"fspl_db_r{_g(r)}m": fspl(f, r) for r in ranges}
    return SweepTable.from_columns("frequency_ghz", f / 1e9, cols)


def rain_table(model="both", rates=RAIN_RATES_MM_H, distance_m=1000.0, tilt_deg=HORIZONTAL,
               elevation_deg=0.0, f_min=1e9, f_max=1e12, points=200) -> SweepTable:
    if model not in ("itu", "crane", "both"):
        raise ValueError(f"rain model must be itu, crane or both, got {model!r}")
    f = log_space_grid(f_min, f_max, points)
    cols = {}
    if model in ("itu", "both"):
        for r in rates:
            cols[f"itu_rain_db_r{_g(r)}mmh"] = itu_rain_attenuation(
                f, r, distance_m, tilt_deg, elevation_deg)
    if model in ("crane", "both"):
        for r in rates:
            cols[f"crane_rain_db_r{_g(r)}mmh"] = crane_rain_attenuation(f, r, distance_m, tilt_deg)
    return SweepTable.from_columns("frequency_ghz", f / 1e9, cols)


def fog_table(densities=FOG_DENSITIES_G_M3, temperature_c=FOG_TEMPERATURE_C, distance_m=100.0,
              f_min=10e9, f_max=1e12, points=200) -> SweepTable:
    f = log_space_grid(f_min, f_max, points)
    cols = {f"fog_db_m{_g(m)}gm3": fog_attenuation(f, FogConditions(temperature_c, m), distance_m)
            for m in densities}
    return SweepTable.from_columns("frequency_ghz", f / 1e9, cols)


def snr_table(band="both", carriers: Sequence[float] | None = None,
              distances=FIG2_DISTANCES_M, bandwidth_hz: float | None = None,
              tx_power_w=0.5, noise_figure_db=10.0, beamforming=False, bs_elems=16, ue_elems=4,
              absorption: AbsorptionTable | None = None) -> SweepTable:
    """SNR against carrier, one series per distance.

    Each carrier gets its band's model and bandwidth (UMi/400 MHz up to
    100 GHz, THz/50 GHz above) unless ``bandwidth_hz`` overrides it.
    """
    if carriers is None:
        carriers = {"mmwave": MMWAVE_CARRIERS_HZ, "thz": THZ_CARRIERS_HZ,
                    "both": MMWAVE_CARRIERS_HZ + THZ_CARRIERS_HZ}.get(band)
        if carriers is None:
            raise ValueError("band 'custom' needs explicit carriers")
    kw = dict(tx_power_w=tx_power_w, noise_figure_db=noise_figure_db,
              n_tx_elements=bs_elems, n_rx_elements=ue_elems)
    if bandwidth_hz is not None:
        kw["bandwidth_hz"] = bandwidth_hz

    def link_for(f):
        return default_link(f, absorption, **kw)

    return snr_sweep(link_for(carriers[0]), distances, carriers, beamforming, per="distance",
                     link_for=link_for)


def coverage_table(configs=COVERAGE_CONFIGS, densities=COVERAGE_DENSITIES, threshold_db=0.0,
                   n_trials=DEFAULT_TRIALS, seed=0, tx_power_w=0.5, noise_figure_db=10.0,
                   absorption: AbsorptionTable | None = None, workers=1) -> SweepTable:
    link = default_link(configs[0][0], absorption, tx_power_w=tx_power_w,
                        noise_figure_db=noise_figure_db)
    base = DeploymentConfig(densities[0], link, snr_threshold_db=threshold_db)
    return coverage_sweep(base, densities, configs, n_trials, seed, workers, absorption)
