"""Brute-force references for the closed forms.

Nothing here calls the closed-form optimisers it is meant to check: the phase
oracle works on complex element-level channels, and the scans evaluate the raw
rate / power expressions on grids.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from irsdf.linkmath import LinkGains, PowerModel, _log2_1p, rate_df_fixed
from irsdf.powerctl import TargetLike, _r_bar, rate_df_opt

MAX_EXHAUSTIVE_POINTS = 2**24
MAX_GRID_ELEMENTS = 8


class SearchSpaceTooLarge(ValueError):
    pass


class ThresholdNotFound(LookupError):
    """No integer N in the scanned range makes the IRS beat DF relaying."""


class NotBracketed(LookupError):
    """The scan hit ``n_max`` before the convex minimum turned upward."""


@dataclass(frozen=True)
class GridSpec:
    resolution: int  # points per dimension
    low: float = 0.0
    high: float = 2 * math.pi

    def __post_init__(self) -> None:
        if self.resolution < 2:
            raise ValueError(f"grid resolution must be >= 2, got {self.resolution}")

    def phases(self) -> np.ndarray:
        """Uniform phase grid on [0, 2pi), always containing 0."""
        return 2 * np.pi * np.arange(self.resolution) / self.resolution


@dataclass(frozen=True)
class ComplexLinkRealization:
    h_sd: complex
    h_sr: np.ndarray
    h_rd: np.ndarray
    alpha: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "h_sr", np.asarray(self.h_sr, dtype=complex))
        object.__setattr__(self, "h_rd", np.asarray(self.h_rd, dtype=complex))
        if self.h_sr.shape != self.h_rd.shape or self.h_sr.ndim != 1:
            raise ValueError("h_sr and h_rd must be 1-D vectors of equal length")
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")

    @property
    def n(self) -> int:
        return self.h_sr.size

    @property
    def cascade(self) -> np.ndarray:
        """Per-element products ``h_sr[n] * h_rd[n]``."""
        return self.h_sr * self.h_rd

    @property
    def beta_sd(self) -> float:
        return abs(self.h_sd) ** 2

    @property
    def beta_irs(self) -> float:
        return float(np.mean(np.abs(self.cascade))) ** 2

    def gains(self) -> LinkGains:
        return LinkGains(
            self.beta_sd,
            float(np.mean(np.abs(self.h_sr) ** 2)),
            float(np.mean(np.abs(self.h_rd) ** 2)),
            self.beta_irs,
        )

    def rate(self, phases: np.ndarray, p: float, sigma2: float) -> np.ndarray:
        """Rate for phase vectors stacked along the last axis of ``phases``."""
        total = self.h_sd + self.alpha * np.sum(np.exp(1j * phases) * self.cascade, axis=-1)
        return _log2_1p(p * np.abs(total) ** 2 / sigma2)

    @classmethod
    def random(
        cls,
        rng: np.random.Generator,
        n: int,
        alpha: float = 1.0,
        beta_sd: float = 1e-10,
        beta_sr: float = 1e-7,
        beta_rd: float = 1e-6,
        spread: float = 0.5,
    ) -> "ComplexLinkRealization":
        """Uniform phases; magnitudes jittered by up to ``spread`` (relative) around the targets."""

        def draw(beta: float, size=None):
            mag = math.sqrt(beta) * rng.uniform(1 - spread, 1 + spread, size)
            return mag * np.exp(1j * rng.uniform(0, 2 * np.pi, size))

        return cls(complex(draw(beta_sd)), draw(beta_sr, n), draw(beta_rd, n), alpha)


def _exhaustive_max(real: ComplexLinkRealization, p: float, sigma2: float, phases: np.ndarray) -> float:
    n, r = real.n, phases.size
    if r**n > MAX_EXHAUSTIVE_POINTS:
        raise SearchSpaceTooLarge(
            f"exhaustive phase search needs {r}^{n} = {r**n} points, limit is {MAX_EXHAUSTIVE_POINTS}"
        )
    if n == 0:
        return float(real.rate(np.zeros(0), p, sigma2))
    # enumerate the leading element in an outer loop to bound memory
    combos = list(itertools.product(phases, repeat=n - 1))
    rest = np.array(combos, dtype=float).reshape(len(combos), n - 1)
    best = -np.inf
    for theta0 in phases:
        grid = np.column_stack([np.full(len(rest), theta0), rest])
        best = max(best, float(np.max(real.rate(grid, p, sigma2))))
    return best


def _sweep_max(real: ComplexLinkRealization, p: float, sigma2: float, phases: np.ndarray) -> float:
    """Exact maximum of the rate over the full product grid, without enumerating it.

    |v| = max over directions phi of Re(exp(-j phi) v). For a fixed phi the
    projection is separable, so each element independently picks the grid phase
    closest to phi - arg(cascade_n). That choice only changes at N*R breakpoints,
    so evaluating one phi per breakpoint interval visits every configuration that
    can be the grid optimum.
    """
    cascade = real.alpha * real.cascade
    if real.n == 0:
        return float(real.rate(np.zeros(0), p, sigma2))
    r = phases.size
    step = 2 * np.pi / r
    args = np.angle(cascade)
    breaks = np.mod(args[:, None] + (np.arange(r) + 0.5) * step, 2 * np.pi).ravel()
    breaks = np.unique(breaks)
    mids = np.concatenate([(breaks[:-1] + breaks[1:]) / 2, [(breaks[-1] + breaks[0] + 2 * np.pi) / 2]])
    # element n aligns best when theta + arg_n is closest to phi
    proj = np.cos(mids[:, None, None] - phases[None, None, :] - args[None, :, None])
    choice = np.argmax(proj, axis=-1)
    return float(np.max(real.rate(phases[choice], p, sigma2)))


def _coordinate_max(
    real: ComplexLinkRealization, p: float, sigma2: float, phases: np.ndarray, tol: float = 1e-10
) -> float:
    theta = np.zeros(real.n)
    current = float(real.rate(theta, p, sigma2))
    while True:
        for i in range(real.n):
            trial = np.repeat(theta[None, :], phases.size, axis=0)
            trial[:, i] = phases
            rates = real.rate(trial, p, sigma2)
            k = int(np.argmax(rates))
            theta[i] = phases[k]
        new = float(real.rate(theta, p, sigma2))
        if new - current <= tol:
            return max(new, current)
        current = new


def brute_force_phase_rate(
    real: ComplexLinkRealization,
    p: float,
    sigma2: float,
    grid: GridSpec,
    method: str = "auto",
) -> float:
    """Best rate over a discretised phase-shift grid.

    ``method``: ``"exhaustive"`` enumerates all resolution**N configurations,
    ``"sweep"`` returns the same maximum via a direction sweep (see
    :func:`_sweep_max`), ``"coordinate"`` runs grid coordinate ascent from
    zero phases. ``"auto"`` picks exhaustive when it is cheap, the sweep up to
    8 elements and coordinate ascent beyond.
    """
    phases = grid.phases()
    n = real.n
    if method == "auto":
        if phases.size**n <= 2**16:
            method = "exhaustive"
        elif n <= MAX_GRID_ELEMENTS:
            method = "sweep"
        else:
            method = "coordinate"
    if method in ("exhaustive", "sweep") and n > MAX_GRID_ELEMENTS:
        raise SearchSpaceTooLarge(f"grid phase search is limited to N <= {MAX_GRID_ELEMENTS}, got N = {n}")
    if method == "exhaustive":
        return _exhaustive_max(real, p, sigma2, phases)
    if method == "sweep":
        return _sweep_max(real, p, sigma2, phases)
    if method == "coordinate":
        return _coordinate_max(real, p, sigma2, phases)
    raise ValueError(f"unknown method {method!r}")


class SplitResult(NamedTuple):
    p1: float
    p2: float
    rate: float


def brute_force_power_split(p: float, gains: LinkGains, sigma2: float, grid: GridSpec) -> SplitResult:
    """Scan ``p1`` over ``resolution`` equal steps of [0, 2p] with ``p2 = 2p - p1``."""
    p1 = np.linspace(0.0, 2.0 * p, grid.resolution + 1)
    p2 = np.maximum(2.0 * p - p1, 0.0)
    rates = rate_df_fixed(p1, p2, gains, sigma2)
    k = int(np.argmax(rates))
    return SplitResult(float(p1[k]), float(p2[k]), float(rates[k]))


def brute_force_threshold_n(p: float, gains: LinkGains, alpha: float, sigma2: float, n_max: int) -> int:
    """Smallest integer ``N >= 1`` with IRS rate strictly above the optimal DF rate."""
    n = np.arange(1, n_max + 1)
    amp = math.sqrt(gains.beta_sd) + n * alpha * math.sqrt(gains.beta_irs)
    r_irs = _log2_1p(p * amp**2 / sigma2)
    r_df = rate_df_opt(p, gains, sigma2)
    wins = np.nonzero(r_irs > r_df)[0]
    if wins.size == 0:
        raise ThresholdNotFound(f"IRS does not beat DF for any N in [1, {n_max}]")
    return int(n[wins[0]])


def brute_force_optimal_n_ee(
    target: TargetLike,
    pm: PowerModel,
    gains: LinkGains,
    alpha: float,
    p_elem: float,
    n_max: int,
    require_bracket: bool = True,
) -> int:
    """Exhaustive argmin over ``N = 0..n_max`` of the IRS total power consumption."""
    snr = 2.0 ** _r_bar(target) - 1.0
    n = np.arange(0, n_max + 1)
    amp = math.sqrt(gains.beta_sd) + n * alpha * math.sqrt(gains.beta_irs)
    total = snr * pm.sigma2 / amp**2 / pm.nu + pm.p_source + pm.p_dest + n * p_elem
    k = int(np.argmin(total))
    if require_bracket and k == n_max:
        raise NotBracketed(f"total power still decreasing at n_max = {n_max}")
    return int(n[k])


def random_gains(rng: np.random.Generator, low_db: float = -120.0, high_db: float = -50.0) -> LinkGains:
    """LOS-product gains with each link drawn uniformly in dB."""
    sd, sr, rd = 10 ** (rng.uniform(low_db, high_db, 3) / 10)
    return LinkGains.los_product(sd, sr, rd)
