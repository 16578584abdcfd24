"""Total power consumption, energy efficiency and EE-optimal IRS size."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from irsdf.linkmath import IrsConfig, LinkGains, PowerModel
from irsdf.powerctl import TargetLike, _r_bar, _snr_for_rate, power_df, power_irs, power_siso


class Scheme(str, enum.Enum):
    SISO = "Siso"
    DF_RELAY = "DfRelay"
    IRS = "Irs"


# tie-break order: simpler hardware first
SCHEME_ORDER = (Scheme.SISO, Scheme.DF_RELAY, Scheme.IRS)


@dataclass(frozen=True)
class TotalPowerBreakdown:
    transmit_over_nu: float
    source_dissipation: float
    dest_dissipation: float
    extra_dissipation: float  # N*P_e for the IRS, P_r for the relay

    @property
    def total(self) -> float:
        return self.transmit_over_nu + self.source_dissipation + self.dest_dissipation + self.extra_dissipation


def total_power_siso(target: TargetLike, pm: PowerModel, beta_sd: float) -> TotalPowerBreakdown:
    p = power_siso(target, beta_sd, pm.sigma2)
    return TotalPowerBreakdown(p / pm.nu, pm.p_source, pm.p_dest, 0.0)


def total_power_irs(target: TargetLike, pm: PowerModel, gains: LinkGains, irs: IrsConfig) -> TotalPowerBreakdown:
    p = power_irs(target, gains, irs, pm.sigma2)
    return TotalPowerBreakdown(p / pm.nu, pm.p_source, pm.p_dest, irs.n_elements * irs.p_elem)


def total_power_df(target: TargetLike, pm: PowerModel, gains: LinkGains) -> TotalPowerBreakdown:
    """The source only transmits in the first half of the frame, so it dissipates half of ``P_s``."""
    p = power_df(target, gains, pm.sigma2)
    return TotalPowerBreakdown(p / pm.nu, 0.5 * pm.p_source, pm.p_dest, pm.p_relay)


class NOptimum(NamedTuple):
    n_real: float
    n_int: int


def optimal_n_ee(
    target: TargetLike,
    sigma2: float,
    irs_alpha: float,
    gains: LinkGains,
    p_elem: float,
    nu: float = 1.0,
) -> NOptimum:
    """IRS size minimising ``p_IRS(N)/nu + N*P_e`` for a fixed rate target.

    The real-valued minimiser is the stationary point of this convex function:

        N = cbrt(2 (2^R - 1) sigma2 / (nu alpha^2 beta_irs P_e)) - sqrt(beta_sd / beta_irs) / alpha

    It can be negative, in which case plain SISO (N = 0) is optimal. The integer
    optimum is the better of the neighbouring integers, clamped at zero.
    """
    if not p_elem > 0:
        raise ValueError("p_elem must be > 0 for a finite EE-optimal element count")
    if not 0 < nu <= 1:
        raise ValueError(f"nu must lie in (0, 1], got {nu}")
    snr = _snr_for_rate(_r_bar(target))
    n_real = float(np.cbrt(2.0 * snr * sigma2 / (nu * irs_alpha**2 * gains.beta_irs * p_elem))) - math.sqrt(
        gains.beta_sd / gains.beta_irs
    ) / irs_alpha

    def cost(n: int) -> float:
        irs = IrsConfig(n, irs_alpha, p_elem)
        return power_irs(target, gains, irs, sigma2) / nu + n * p_elem

    candidates = sorted({0, max(0, math.floor(n_real)), max(0, math.ceil(n_real))})
    n_int = min(candidates, key=cost)
    return NOptimum(n_real, n_int)


def energy_efficiency(bandwidth: float, target: TargetLike, total: TotalPowerBreakdown) -> float:
    """``B * R / P_total`` in bit/Joule."""
    return bandwidth * _r_bar(target) / total.total


@dataclass(frozen=True)
class EeResult:
    scheme: Scheme
    ee_value: float  # bit/Joule
    bandwidth: float
    n_opt: int = 0
    all_ee: dict = field(default_factory=dict)  # EE of every scheme, keyed by Scheme


def best_scheme_ee(
    target: TargetLike,
    pm: PowerModel,
    gains: LinkGains,
    irs_alpha: float,
    p_elem: float,
    bandwidth: float,
) -> EeResult:
    """Compare SISO, DF relaying and the EE-optimally sized IRS at one rate target."""
    n_opt = optimal_n_ee(target, pm.sigma2, irs_alpha, gains, p_elem, nu=pm.nu).n_int
    totals = {
        Scheme.SISO: total_power_siso(target, pm, gains.beta_sd),
        Scheme.DF_RELAY: total_power_df(target, pm, gains),
        Scheme.IRS: total_power_irs(target, pm, gains, IrsConfig(n_opt, irs_alpha, p_elem)),
    }
    ee = {s: energy_efficiency(bandwidth, target, t) for s, t in totals.items()}
    best = SCHEME_ORDER[0]
    for s in SCHEME_ORDER[1:]:
        if ee[s] > ee[best]:
            best = s
    return EeResult(best, ee[best], bandwidth, n_opt, ee)
