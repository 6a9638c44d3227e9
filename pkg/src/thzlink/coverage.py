"""Monte Carlo SNR coverage under Poisson base-station deployments.

A test user sits at the origin; base stations form a homogeneous PPP on a
disk around it. A trial is covered when the best SNR (beamforming gain
included) over all stations exceeds the threshold.

Reproducibility contract
------------------------
Trial ``i`` of a run with seed ``s`` draws from its own generator,
``numpy.random.Generator(Philox(key=(s << 64) | i))`` (Philox4x64-10), so
the estimate depends only on ``(cfg, n_trials, seed)`` and not on how trials
are split across workers. Seeds must lie in ``[0, 2**64)``.

The PPP sampler generates stations in order of increasing radius: the
values lambda*pi*r^2 of successive stations are the arrival times of a
unit-rate Poisson process, and angles are uniform. Each station consumes one
(gap, angle) pair of uniforms, so for a given trial stream the stations
inside any radius are the same whatever the window, and the density only
rescales their radii.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channel import AbsorptionTable, Thz
from .errors import ConfigurationError, DomainError, NumericError
from .link_budget import LinkConfig, default_link, snr_db
from .sweep import SweepTable
from .units import check_grid

DEFAULT_TRIALS = 20_000
WINDOW_FACTOR = 3.0
MAX_WINDOW_M = 20_000.0
_CHUNK = 1000
_SEED_LIMIT = 2 ** 64


@dataclass(frozen=True)
class DeploymentConfig:
    bs_density_per_km2: float
    link: LinkConfig
    snr_threshold_db: float = 0.0
    window_radius_m: float | None = None
    min_link_distance_m: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.bs_density_per_km2) and self.bs_density_per_km2 > 0):
            raise DomainError(f"base-station density must be positive, got {self.bs_density_per_km2}")
        if not math.isfinite(self.snr_threshold_db):
            raise DomainError("SNR threshold must be finite")
        if self.window_radius_m is not None and not self.window_radius_m > 0:
            raise DomainError("window radius must be positive")
        if not self.min_link_distance_m > 0:
            raise DomainError("minimum link distance must be positive")


@dataclass(frozen=True)
class CoverageEstimate:
    p_hat: float
    ci_half_width_95: float
    n_trials: int
    seed: int
    covered: int


@dataclass(frozen=True)
class CriticalRadius:
    """Distance at which the SNR falls to the threshold.

    ``reachable`` is False when even the minimum link distance misses the
    threshold; ``radius_m`` is then the minimum link distance and coverage
    is zero.
    """

    radius_m: float
    reachable: bool


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    if not 0 <= seed < _SEED_LIMIT:
        raise DomainError(f"seed must lie in [0, 2**64), got {seed}")
    return np.random.Generator(np.random.Philox(key=(int(seed) << 64) | int(trial)))


def _ppp_polar(density_per_km2: float, radius_m: float,
               rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    if not (density_per_km2 > 0 and radius_m > 0):
        raise DomainError("density and radius must be positive")
    intensity = density_per_km2 / 1e6 * math.pi  # per m^2 of r^2
    target = intensity * radius_m ** 2
    # uniforms are consumed in (gap, angle) pairs; the pair sequence does not
    # depend on how many are drawn per call
    batch = int(target + 6.0 * math.sqrt(target)) + 16
    draws = [rng.random(2 * batch)]
    while True:
        u = np.concatenate(draws) if len(draws) > 1 else draws[0]
        arrivals = np.cumsum(-np.log1p(-u[0::2]))
        if arrivals[-1] > target:
            break
        draws.append(rng.random(2 * batch))
    n = int(np.searchsorted(arrivals, target, side="right"))
    return np.sqrt(arrivals[:n] / intensity), 2.0 * math.pi * u[1:2 * n:2]


def sample_ppp(density_per_km2: float, radius_m: float, rng: np.random.Generator) -> np.ndarray:
    """PPP realisation on the disk of ``radius_m`` around the origin.

    Returns an ``(n, 2)`` array of positions in metres sorted by distance
    from the origin.
    """
    r, phi = _ppp_polar(density_per_km2, radius_m, rng)
    return np.column_stack((r * np.cos(phi), r * np.sin(phi)))


def critical_radius(cfg: DeploymentConfig, rtol: float = 1e-12) -> CriticalRadius:
    """Bisection root of SNR(r) = threshold (beamforming gain included)."""
    def margin(r):
        return float(snr_db(cfg.link, r, include_beamforming=True)) - cfg.snr_threshold_db

    lo = cfg.min_link_distance_m
    if not margin(lo) > 0:
        return CriticalRadius(lo, False)
    hi = 2.0 * lo
    while margin(hi) > 0:
        hi *= 2.0
        if hi > 1e9:
            raise NumericError("SNR stays above threshold beyond 1e9 m; root not bracketed")
    for _ in range(200):
        if hi - lo <= rtol * hi:
            break
        mid = 0.5 * (lo + hi)
        m = margin(mid)
        if not math.isfinite(m):
            raise NumericError(f"non-finite SNR at {mid} m")
        if m > 0:
            lo = mid
        else:
            hi = mid
    return CriticalRadius(0.5 * (lo + hi), True)


def coverage_closed_form(cfg: DeploymentConfig) -> float:
    """Void probability: P(nearest station within r0) = 1 - exp(-lambda pi r0^2)."""
    rc = critical_radius(cfg)
    if not rc.reachable:
        return 0.0
    return -math.expm1(-cfg.bs_density_per_km2 / 1e6 * math.pi * rc.radius_m ** 2)


def density_for_coverage(cfg: DeploymentConfig, p_target: float) -> float:
    """Density (per km^2) at which the closed form reaches ``p_target``."""
    if not 0 < p_target < 1:
        raise DomainError("target probability must lie in (0, 1)")
    rc = critical_radius(cfg)
    if not rc.reachable:
        return math.inf
    return -math.log1p(-p_target) / (math.pi * rc.radius_m ** 2) * 1e6


def window_radius(cfg: DeploymentConfig, rc: CriticalRadius | None = None) -> float:
    rc = rc or critical_radius(cfg)
    if cfg.window_radius_m is None:
        if not rc.reachable:
            return WINDOW_FACTOR * cfg.min_link_distance_m
        # the cap bounds cost but never cuts inside r0, which would bias p_hat
        return max(min(WINDOW_FACTOR * rc.radius_m, MAX_WINDOW_M), rc.radius_m)
    if rc.reachable and cfg.window_radius_m < rc.radius_m:
        raise ConfigurationError(
            f"window radius {cfg.window_radius_m:g} m is smaller than the critical radius "
            f"{rc.radius_m:.6g} m; coverage would be truncated")
    return cfg.window_radius_m


def _count_covered(cfg: DeploymentConfig, window: float, seed: int, start: int, stop: int) -> int:
    lengths = np.empty(stop - start, dtype=np.intp)
    dists = []
    for j, trial in enumerate(range(start, stop)):
        r, _ = _ppp_polar(cfg.bs_density_per_km2, window, trial_rng(seed, trial))
        lengths[j] = r.size
        dists.append(r)
    if not lengths.any():
        return 0
    d = np.maximum(np.concatenate(dists), cfg.min_link_distance_m)
    snr = np.asarray(snr_db(cfg.link, d, include_beamforming=True))
    nonempty = lengths > 0
    offsets = np.concatenate(([0], np.cumsum(lengths)[:-1]))[nonempty]
    best = np.maximum.reduceat(snr, offsets)
    return int(np.count_nonzero(best > cfg.snr_threshold_db))


def coverage_probability(cfg: DeploymentConfig, n_trials: int = DEFAULT_TRIALS, seed: int = 0,
                         workers: int = 1) -> CoverageEstimate:
    """Monte Carlo coverage estimate with a normal-approximation 95% interval.

    ``workers > 1`` spreads trial chunks over processes; the result is
    bit-identical to the sequential run.
    """
    if int(n_trials) != n_trials or n_trials < 1:
        raise DomainError(f"n_trials must be a positive integer, got {n_trials!r}")
    trial_rng(seed, 0)  # validates the seed up front
    rc = critical_radius(cfg)
    window = window_radius(cfg, rc)
    bounds = [(s, min(s + _CHUNK, n_trials)) for s in range(0, n_trials, _CHUNK)]
    if workers > 1 and len(bounds) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_count_covered, cfg, window, seed, a, b) for a, b in bounds]
            covered = sum(f.result() for f in futures)
    else:
        covered = sum(_count_covered(cfg, window, seed, a, b) for a, b in bounds)
    p = covered / n_trials
    return CoverageEstimate(p_hat=p, ci_half_width_95=1.96 * math.sqrt(p * (1 - p) / n_trials),
                            n_trials=int(n_trials), seed=int(seed), covered=covered)


def config_label(carrier_hz: float, n_tx: int, n_rx: int) -> str:
    return f"p_cov_{carrier_hz / 1e9:g}ghz_{n_tx}x{n_rx}"


def coverage_sweep(base_cfg: DeploymentConfig, densities: Sequence[float],
                   configs: Sequence[tuple[float, int, int]], n_trials: int = DEFAULT_TRIALS,
                   seed: int = 0, workers: int = 1,
                   absorption: AbsorptionTable | None = None) -> SweepTable:
    """One coverage series per (carrier, n_tx, n_rx) across ``densities``.

    Each configuration gets the band defaults of its carrier and inherits
    transmit power, noise figure, threshold and geometry from ``base_cfg``.
    THz carriers use ``absorption``, else the table of a THz ``base_cfg``,
    else the bundled one.
    """
    x = check_grid("densities", densities)
    if len(configs) == 0:
        raise DomainError("need at least one (carrier, n_tx, n_rx) configuration")
    base = base_cfg.link
    table = absorption
    if table is None and isinstance(base.model, Thz):
        table = base.model.absorption
    cols = {}
    for carrier, n_tx, n_rx in configs:
        link = default_link(carrier, table, tx_power_w=base.tx_power_w,
                            noise_figure_db=base.noise_figure_db,
                            n_tx_elements=n_tx, n_rx_elements=n_rx)
        cols[config_label(carrier, n_tx, n_rx)] = [
            coverage_probability(
                DeploymentConfig(float(lam), link, base_cfg.snr_threshold_db,
                                 base_cfg.window_radius_m, base_cfg.min_link_distance_m),
                n_trials, seed, workers).p_hat
            for lam in x
        ]
    return SweepTable.from_columns("density_per_km2", x, cols)
