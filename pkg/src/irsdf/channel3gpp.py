"""3GPP UMi pathloss (no shadowing), thermal noise and the source/IRS/destination layout.

Source and IRS/relay sit on a line 80 m apart; the destination moves along a
parallel line 10 m away, at horizontal distance ``d1`` from the source.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from irsdf.linkmath import LinkGains
from irsdf.units import db_to_linear, dbm_to_watts

MIN_DISTANCE_M = 10.0
CARRIER_HZ = 3e9  # the UMi constants below are specific to this carrier
THERMAL_NOISE_DBM_PER_HZ = -174.0


@dataclass(frozen=True)
class AntennaGains:
    g_t: float = 0.0  # dBi
    g_r: float = 0.0  # dBi

    def __post_init__(self) -> None:
        if not (math.isfinite(self.g_t) and math.isfinite(self.g_r)):
            raise ValueError("antenna gains must be finite")


@dataclass(frozen=True)
class Geometry:
    src_irs_distance: float = 80.0
    vertical_offset: float = 10.0
    d1: float = 70.0

    def __post_init__(self) -> None:
        for name in ("src_irs_distance", "vertical_offset", "d1"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")

    @property
    def d_sr(self) -> float:
        return self.src_irs_distance

    @property
    def d_sd(self) -> float:
        return math.hypot(self.d1, self.vertical_offset)

    @property
    def d_rd(self) -> float:
        return math.hypot(self.src_irs_distance - self.d1, self.vertical_offset)


@dataclass(frozen=True)
class NoiseBudget:
    bandwidth: float = 10e6  # Hz
    noise_figure: float = 10.0  # dB

    def __post_init__(self) -> None:
        if not self.bandwidth > 0:
            raise ValueError(f"bandwidth must be > 0, got {self.bandwidth}")

    @property
    def dbm(self) -> float:
        return THERMAL_NOISE_DBM_PER_HZ + 10.0 * math.log10(self.bandwidth) + self.noise_figure


def pathloss_umi(d: float, los: bool, ant: AntennaGains = AntennaGains()) -> float:
    """Channel gain ``beta(d)`` in dB including antenna gains.

    Raises ``ValueError`` below 10 m, where the model is not defined.
    """
    if not d >= MIN_DISTANCE_M:
        raise ValueError(f"UMi pathloss is only defined for d >= {MIN_DISTANCE_M} m, got {d}")
    if los:
        loss = -37.5 - 22.0 * math.log10(d)
    else:
        loss = -35.1 - 36.7 * math.log10(d)
    return ant.g_t + ant.g_r + loss


def noise_power(nb: NoiseBudget) -> float:
    """Noise power in Watts: -174 dBm/Hz + 10 log10(B) + NF."""
    return dbm_to_watts(nb.dbm)


def scenario_gains(geo: Geometry, ant_src: float = 5.0, ant_irs: float = 5.0, ant_dest: float = 0.0) -> LinkGains:
    """Link gains for the layout: LOS source-IRS and IRS-destination, NLOS direct path."""
    beta_sr = db_to_linear(pathloss_umi(geo.d_sr, True, AntennaGains(ant_src, ant_irs)))
    beta_rd = db_to_linear(pathloss_umi(geo.d_rd, True, AntennaGains(ant_irs, ant_dest)))
    beta_sd = db_to_linear(pathloss_umi(geo.d_sd, False, AntennaGains(ant_src, ant_dest)))
    return LinkGains.los_product(beta_sd, beta_sr, beta_rd)
