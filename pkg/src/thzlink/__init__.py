"""Propagation losses, mmWave/THz link budgets and PPP coverage probability."""

from .channel import (
    AbsorptionTable, FreeSpace, Thz, UrbanCanyonLos, default_absorption_table,
    load_absorption_table, pathloss, thz_pathloss, umi_los_pathloss,
)
from .coverage import (
    CoverageEstimate, DeploymentConfig, coverage_probability, coverage_sweep, critical_radius,
    sample_ppp,
)
from .link_budget import (
    LinkConfig, beamforming_gain_db, default_link, mmwave_link, noise_power_dbm, snr_db,
    snr_sweep, thz_link, two_way_loss_db,
)
from .propagation import (
    FogConditions, RainCoefficients, crane_rain_attenuation, fog_attenuation,
    fog_specific_attenuation, fspl, itu_rain_attenuation, rain_coefficients,
)
from .sweep import SweepTable
from .units import SPEED_OF_LIGHT, db_from_linear, dbm_from_watts, log_space_grid

__version__ = "0.1.0"
