"""Achievable rates for direct (SISO), IRS-assisted and repetition-coded DF links.

All rates are in bit/s/Hz. The functions accept scalars or numpy arrays for the
power and element-count arguments so sweeps and oracles can vectorise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from irsdf.units import db_to_linear

LN2 = math.log(2.0)


def _log2_1p(x):
    # log1p keeps relative precision at very low SNR, which the threshold scans need
    return np.log1p(x) / LN2


def _check_sigma2(sigma2: float) -> None:
    if not sigma2 > 0:
        raise ValueError(f"noise power sigma2 must be > 0, got {sigma2}")


def _check_gain(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be positive and finite, got {value}")


@dataclass(frozen=True)
class LinkGains:
    """Linear channel power gains of the direct, source-relay, relay-destination links.

    ``beta_irs`` is the squared mean per-element magnitude of the cascaded
    source-IRS-destination channel.
    """

    beta_sd: float
    beta_sr: float
    beta_rd: float
    beta_irs: float

    def __post_init__(self) -> None:
        for name in ("beta_sd", "beta_sr", "beta_rd", "beta_irs"):
            _check_gain(name, getattr(self, name))

    @classmethod
    def los_product(cls, beta_sd: float, beta_sr: float, beta_rd: float) -> "LinkGains":
        """Every IRS element sees the relay's channels, so ``beta_irs = beta_sr * beta_rd``."""
        return cls(beta_sd, beta_sr, beta_rd, beta_sr * beta_rd)

    @classmethod
    def from_db(cls, beta_sd_db: float, beta_sr_db: float, beta_rd_db: float) -> "LinkGains":
        return cls.los_product(db_to_linear(beta_sd_db), db_to_linear(beta_sr_db), db_to_linear(beta_rd_db))


@dataclass(frozen=True)
class IrsConfig:
    n_elements: int = 0
    alpha: float = 1.0
    p_elem: float = 0.0  # W per element

    def __post_init__(self) -> None:
        if self.n_elements < 0:
            raise ValueError(f"n_elements must be >= 0, got {self.n_elements}")
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not self.p_elem >= 0:
            raise ValueError(f"p_elem must be >= 0, got {self.p_elem}")


@dataclass(frozen=True)
class PowerModel:
    """Transmit budget, noise and hardware dissipation (all Watts)."""

    p: float
    sigma2: float
    nu: float = 1.0
    p_source: float = 0.0
    p_dest: float = 0.0
    p_relay: float = 0.0

    def __post_init__(self) -> None:
        if not self.p >= 0:
            raise ValueError(f"p must be >= 0, got {self.p}")
        _check_sigma2(self.sigma2)
        if not 0 < self.nu <= 1:
            raise ValueError(f"nu must lie in (0, 1], got {self.nu}")
        for name in ("p_source", "p_dest", "p_relay"):
            if not getattr(self, name) >= 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")


def rate_siso(p, beta_sd: float, sigma2: float):
    """``log2(1 + p*beta_sd/sigma2)``."""
    _check_sigma2(sigma2)
    return _log2_1p(p * beta_sd / sigma2)


def irs_gain(gains: LinkGains, n_elements, alpha: float):
    """End-to-end power gain ``(sqrt(beta_sd) + N*alpha*sqrt(beta_irs))**2`` with aligned phases.

    Expanded so that ``N = 0`` returns ``beta_sd`` bit-for-bit.
    """
    a = math.sqrt(gains.beta_sd)
    x = n_elements * alpha * math.sqrt(gains.beta_irs)
    return gains.beta_sd + x * (2.0 * a + x)


def rate_irs(p, gains: LinkGains, irs: IrsConfig, sigma2: float, n_elements=None):
    """Capacity of the IRS-assisted link with optimally aligned phase shifts.

    ``n_elements`` overrides ``irs.n_elements`` and may be an array.
    """
    _check_sigma2(sigma2)
    n = irs.n_elements if n_elements is None else n_elements
    return _log2_1p(p * irs_gain(gains, n, irs.alpha) / sigma2)


def rate_df_fixed(p1, p2, gains: LinkGains, sigma2: float):
    """Repetition-coded DF rate for given phase-1 (source) and phase-2 (relay) powers.

    The relay must decode (first term of the min), and the destination combines
    both phases by MRC (second term). The half-duplex pre-log is 1/2.
    """
    _check_sigma2(sigma2)
    snr_relay = p1 * gains.beta_sr / sigma2
    snr_dest = p1 * gains.beta_sd / sigma2 + p2 * gains.beta_rd / sigma2
    return 0.5 * _log2_1p(np.minimum(snr_relay, snr_dest))
