"""Thermal noise, array gain and SNR of a single link.

SNR(d) = P_tx[dBm] + G_bf - PL(model, f, d) - N(B, F), with the thermal
floor at -174 dBm/Hz and G_bf = 10 log10(N_tx N_rx).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .channel import PathLossModel, Thz, UrbanCanyonLos, default_absorption_table, pathloss
from .errors import DomainError
from .sweep import SweepTable
from .units import _out, as_positive, check_grid, dbm_from_watts

THERMAL_NOISE_DBM_HZ = -174.0

MMWAVE_BANDWIDTH_HZ = 400e6
THZ_BANDWIDTH_HZ = 50e9
MMWAVE_MAX_CARRIER_HZ = 100e9

MMWAVE_CARRIERS_HZ = (28e9, 41e9, 60e9, 100e9)
THZ_CARRIERS_HZ = (300e9, 400e9, 700e9, 1000e9)
FIG2_DISTANCES_M = (5.0, 50.0, 150.0)


@dataclass(frozen=True)
class LinkConfig:
    carrier_hz: float
    model: PathLossModel
    bandwidth_hz: float
    tx_power_w: float = 0.5
    noise_figure_db: float = 10.0
    n_tx_elements: int = 1
    n_rx_elements: int = 1

    def __post_init__(self):
        as_positive("carrier", self.carrier_hz)
        as_positive("bandwidth", self.bandwidth_hz)
        as_positive("transmit power", self.tx_power_w)
        if not np.isfinite(self.noise_figure_db):
            raise DomainError("noise figure must be finite")
        for name in ("n_tx_elements", "n_rx_elements"):
            n = getattr(self, name)
            if int(n) != n or n < 1:
                raise DomainError(f"{name} must be a positive integer, got {n!r}")


def mmwave_link(carrier_hz: float, **kw) -> LinkConfig:
    """3GPP UMi link with the 400 MHz NR carrier bandwidth."""
    kw.setdefault("bandwidth_hz", MMWAVE_BANDWIDTH_HZ)
    return LinkConfig(carrier_hz=carrier_hz, model=UrbanCanyonLos(), **kw)


def thz_link(carrier_hz: float, absorption=None, **kw) -> LinkConfig:
    """Spreading-plus-absorption link with a 50 GHz channel.

    ``absorption=None`` selects the bundled table. For an absorption-free
    link build ``LinkConfig(model=Thz())`` directly.
    """
    kw.setdefault("bandwidth_hz", THZ_BANDWIDTH_HZ)
    table = default_absorption_table() if absorption is None else absorption
    return LinkConfig(carrier_hz=carrier_hz, model=Thz(table), **kw)


def default_link(carrier_hz: float, absorption=None, **kw) -> LinkConfig:
    """mmWave settings up to 100 GHz, THz settings above."""
    if carrier_hz <= MMWAVE_MAX_CARRIER_HZ:
        return mmwave_link(carrier_hz, **kw)
    return thz_link(carrier_hz, absorption, **kw)


def noise_power_dbm(bandwidth_hz, noise_figure_db):
    b = as_positive("bandwidth", bandwidth_hz)
    return _out(THERMAL_NOISE_DBM_HZ + 10.0 * np.log10(b) + np.asarray(noise_figure_db, dtype=float))


def beamforming_gain_db(n_tx: int, n_rx: int) -> float:
    for n in (n_tx, n_rx):
        if int(n) != n or n < 1:
            raise DomainError(f"element counts must be positive integers, got {n!r}")
    return float(10.0 * np.log10(float(n_tx) * float(n_rx)))


def snr_db(cfg: LinkConfig, d_m, include_beamforming: bool = False):
    """Received SNR at distance ``d_m`` (scalar or array)."""
    snr = (dbm_from_watts(cfg.tx_power_w)
           - np.asarray(pathloss(cfg.model, cfg.carrier_hz, d_m))
           - noise_power_dbm(cfg.bandwidth_hz, cfg.noise_figure_db))
    if include_beamforming:
        snr = snr + beamforming_gain_db(cfg.n_tx_elements, cfg.n_rx_elements)
    return _out(snr)


def _distance_tag(d: float) -> str:
    return f"{d:g}m"


def _carrier_tag(f: float) -> str:
    return f"{f / 1e9:g}ghz"


def snr_sweep(cfg: LinkConfig, distances: Sequence[float], carriers: Sequence[float] | None = None,
              include_beamforming: bool = False, per: str = "distance",
              link_for=None) -> SweepTable:
    """SNR over a carrier grid (one series per distance) or over distances
    (one series per carrier).

    ``link_for(carrier)`` builds the configuration used at each carrier; by
    default ``cfg`` with only the carrier replaced.
    """
    if len(distances) == 0:
        raise DomainError("need at least one distance")
    carriers = (cfg.carrier_hz,) if carriers is None else tuple(carriers)
    if link_for is None:
        def link_for(f):
            return replace(cfg, carrier_hz=f)
    links = [link_for(f) for f in carriers]
    if per == "distance":
        x = check_grid("carriers", carriers)
        cols = {f"snr_db_d{_distance_tag(d)}":
                [float(snr_db(link, d, include_beamforming)) for link in links] for d in distances}
        return SweepTable.from_columns("frequency_ghz", x / 1e9, cols)
    if per == "carrier":
        x = check_grid("distances", distances)
        cols = {f"snr_db_f{_carrier_tag(link.carrier_hz)}": snr_db(link, x, include_beamforming)
                for link in links}
        return SweepTable.from_columns("distance_m", x, cols)
    raise DomainError(f"per must be 'distance' or 'carrier', got {per!r}")


def two_way_loss_db(model: PathLossModel, f_hz, d_m):
    """Monostatic propagation loss: out and back over the same path."""
    return _out(2.0 * np.asarray(pathloss(model, f_hz, d_m)))
