"""DF power allocation, IRS element-count thresholds and rate-constrained transmit power."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from irsdf.linkmath import LN2, IrsConfig, LinkGains, _check_sigma2, _log2_1p, irs_gain, rate_df_fixed


class DfMode(str, enum.Enum):
    SISO_FALLBACK = "SisoFallback"
    DF_ACTIVE = "DfActive"


@dataclass(frozen=True)
class DfPowerSplit:
    """Phase-1 (source) and phase-2 (relay) powers; their mean is the average budget."""

    p1: float
    p2: float
    mode: DfMode

    @property
    def average(self) -> float:
        return 0.5 * (self.p1 + self.p2)


@dataclass(frozen=True)
class RateTarget:
    r_bar: float  # bit/s/Hz

    def __post_init__(self) -> None:
        if not (self.r_bar > 0 and math.isfinite(self.r_bar)):
            raise ValueError(f"rate target must be positive and finite, got {self.r_bar}")


TargetLike = Union[RateTarget, float]


def _r_bar(target: TargetLike) -> float:
    return target.r_bar if isinstance(target, RateTarget) else RateTarget(float(target)).r_bar


def _snr_for_rate(r_bar: float) -> float:
    # 2**r - 1 without cancellation for small r
    return math.expm1(r_bar * LN2)


def df_mode(gains: LinkGains) -> DfMode:
    """DF is worth activating only if the direct link is no stronger than either relay hop.

    If ``beta_rd < beta_sd`` the combined destination SNR grows with ``p1`` as
    well, so the rate is maximised with the relay silent even when
    ``beta_sd <= beta_sr``. Equality with either hop counts as DF-active.
    """
    active = gains.beta_sd <= gains.beta_sr and gains.beta_sd <= gains.beta_rd
    return DfMode.DF_ACTIVE if active else DfMode.SISO_FALLBACK


def _df_effective_gain(gains: LinkGains) -> float:
    """Gain ``g`` such that the optimally split DF link has end-to-end SNR ``2*p*g/sigma2``."""
    return gains.beta_rd * gains.beta_sr / (gains.beta_sr + gains.beta_rd - gains.beta_sd)


def optimal_df_power_split(p: float, gains: LinkGains) -> DfPowerSplit:
    """Split the two-phase budget ``p1 + p2 = 2p`` to maximise the DF rate.

    In the DF-active regime the split equalises the relay-decoding SNR and the
    combined destination SNR. Otherwise the relay stays silent and the source
    spends the whole budget in phase 1.
    """
    if p < 0:
        raise ValueError(f"p must be >= 0, got {p}")
    if df_mode(gains) is DfMode.SISO_FALLBACK:
        return DfPowerSplit(2.0 * p, 0.0, DfMode.SISO_FALLBACK)
    denom = gains.beta_sr + gains.beta_rd - gains.beta_sd
    p1 = 2.0 * p * gains.beta_rd / denom
    p2 = 2.0 * p * (gains.beta_sr - gains.beta_sd) / denom
    return DfPowerSplit(p1, p2, DfMode.DF_ACTIVE)


def rate_df_opt(p, gains: LinkGains, sigma2: float):
    """DF rate under the optimal power split. ``p`` may be an array."""
    _check_sigma2(sigma2)
    if df_mode(gains) is DfMode.SISO_FALLBACK:
        return rate_df_fixed(2.0 * np.asarray(p, dtype=float), 0.0, gains, sigma2)
    return 0.5 * _log2_1p(2.0 * p * _df_effective_gain(gains) / sigma2)


@dataclass(frozen=True)
class Threshold:
    """Element-count threshold: the IRS beats DF for every integer ``N > value``.

    ``min_integer_n`` is the smallest winning integer, never below 1.
    ``always_wins`` is set when the direct link beats the source-relay link,
    in which case any ``N >= 1`` suffices.
    """

    value: float
    min_integer_n: int
    always_wins: bool = False

    @classmethod
    def from_value(cls, value: float) -> "Threshold":
        return cls(value, max(1, math.floor(value) + 1))


def min_elements_to_beat_df(p: float, gains: LinkGains, alpha: float, sigma2: float) -> Threshold:
    """Threshold on N above which the IRS link outrates optimally split DF relaying."""
    _check_sigma2(sigma2)
    if not p > 0:
        raise ValueError("p must be > 0; use min_elements_low_snr_limit for the p -> 0 limit")
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if df_mode(gains) is DfMode.SISO_FALLBACK:
        # DF then rates below SISO, which any N >= 1 already beats
        return Threshold(0.0, 1, always_wins=True)
    x = 2.0 * p * _df_effective_gain(gains) / sigma2
    # sqrt(1+x) - 1, rearranged so it stays accurate as x -> 0
    excess = x / (math.sqrt(1.0 + x) + 1.0)
    value = (math.sqrt(excess * sigma2 / p) - math.sqrt(gains.beta_sd)) / (alpha * math.sqrt(gains.beta_irs))
    return Threshold.from_value(value)


def min_elements_low_snr_limit(gains: LinkGains, alpha: float) -> Threshold:
    """The ``p -> 0`` limit of :func:`min_elements_to_beat_df` under the LOS product construction."""
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if df_mode(gains) is DfMode.SISO_FALLBACK:
        return Threshold(0.0, 1, always_wins=True)
    value = (
        math.sqrt(1.0 / (gains.beta_sr + gains.beta_rd - gains.beta_sd))
        - math.sqrt(gains.beta_sd) / math.sqrt(gains.beta_sr * gains.beta_rd)
    ) / alpha
    return Threshold.from_value(value)


def power_siso(target: TargetLike, beta_sd: float, sigma2: float) -> float:
    """Transmit power for the direct link to reach the rate target."""
    _check_sigma2(sigma2)
    return _snr_for_rate(_r_bar(target)) * sigma2 / beta_sd


def power_irs(target: TargetLike, gains: LinkGains, irs: IrsConfig, sigma2: float, n_elements=None):
    _check_sigma2(sigma2)
    n = irs.n_elements if n_elements is None else n_elements
    return _snr_for_rate(_r_bar(target)) * sigma2 / irs_gain(gains, n, irs.alpha)


def power_df(target: TargetLike, gains: LinkGains, sigma2: float) -> float:
    """Average transmit power for DF relaying (no mode selection) to reach the target.

    The half-duplex pre-log means the SNR must reach ``2**(2R) - 1``. With a
    direct link stronger than the relay's receive link the relay is not used.
    When ``beta_rd < beta_sd <= beta_sr`` the relay is silent too; the power is
    then the one that makes :func:`rate_df_opt` hit the target.
    """
    _check_sigma2(sigma2)
    snr = _snr_for_rate(2.0 * _r_bar(target))
    if gains.beta_sd > gains.beta_sr:
        return snr * sigma2 / gains.beta_sd
    if df_mode(gains) is DfMode.SISO_FALLBACK:
        return snr * sigma2 / (2.0 * gains.beta_sd)
    return snr * sigma2 / (2.0 * _df_effective_gain(gains))


class ModeChoice(NamedTuple):
    power: float
    mode: DfMode


def power_df_mode(target: TargetLike, gains: LinkGains, sigma2: float) -> ModeChoice:
    """Power of a relay system that switches to direct transmission when that is cheaper."""
    p_siso = power_siso(target, gains.beta_sd, sigma2)
    p_df = power_df(target, gains, sigma2)
    if p_siso <= p_df:
        return ModeChoice(p_siso, DfMode.SISO_FALLBACK)
    return ModeChoice(p_df, DfMode.DF_ACTIVE)
