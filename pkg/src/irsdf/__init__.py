"""Closed-form link analysis of IRS-assisted transmission versus DF relaying."""

__version__ = "0.1.0"

from irsdf.units import Decibel, db_to_linear, dbm_to_watts, linear_to_db, watts_to_dbm
from irsdf.linkmath import (
    IrsConfig,
    LinkGains,
    PowerModel,
    rate_df_fixed,
    rate_irs,
    rate_siso,
)
from irsdf.powerctl import (
    DfMode,
    DfPowerSplit,
    RateTarget,
    Threshold,
    min_elements_low_snr_limit,
    min_elements_to_beat_df,
    optimal_df_power_split,
    power_df,
    power_df_mode,
    power_irs,
    power_siso,
    rate_df_opt,
)
from irsdf.energy import (
    EeResult,
    Scheme,
    TotalPowerBreakdown,
    best_scheme_ee,
    energy_efficiency,
    optimal_n_ee,
    total_power_df,
    total_power_irs,
    total_power_siso,
)
from irsdf.channel3gpp import (
    AntennaGains,
    Geometry,
    NoiseBudget,
    noise_power,
    pathloss_umi,
    scenario_gains,
)

__all__ = [name for name in dir() if not name.startswith("_")]
