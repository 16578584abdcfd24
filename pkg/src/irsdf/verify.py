"""Randomised closed-form vs brute-force checks, shared by the CLI and the test suite."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from irsdf.energy import optimal_n_ee
from irsdf.linkmath import IrsConfig, LinkGains, PowerModel, rate_df_fixed, rate_irs
from irsdf.oracle import (
    ComplexLinkRealization,
    GridSpec,
    brute_force_optimal_n_ee,
    brute_force_phase_rate,
    brute_force_power_split,
    brute_force_threshold_n,
)
from irsdf.powerctl import min_elements_to_beat_df, optimal_df_power_split, power_irs, rate_df_opt

SIGMA2 = 10 ** ((-94 - 30) / 10)


@dataclass
class Report:
    suite: str
    seed: int
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.failures)} of {len(self.rows)})"
        return f"{self.suite}: {status} seed={self.seed} cases={len(self.rows)}"


def scenario_like_gains(rng: np.random.Generator) -> LinkGains:
    """Gains in the ranges a street-level deployment produces, direct link usually weakest."""
    sd = rng.uniform(-130.0, -70.0)
    sr, rd = rng.uniform(-90.0, -50.0, 2)
    return LinkGains.from_db(sd, sr, rd)


def lemma1(seed: int = 0, draws: int = 100, n_max: int = 4, resolution: int = 256, tol: float = 1e-3) -> Report:
    rng = np.random.default_rng(seed)
    rep = Report("lemma1", seed, ["draw", "N", "closed_form", "grid_max", "gap"])
    grid = GridSpec(resolution)
    for i in range(draws):
        n = int(rng.integers(1, n_max + 1))
        real = ComplexLinkRealization.random(
            rng,
            n,
            alpha=float(rng.uniform(0.5, 1.0)),
            beta_sd=10 ** rng.uniform(-11, -9),
            beta_sr=10 ** rng.uniform(-8, -6),
            beta_rd=10 ** rng.uniform(-7, -5),
        )
        p = 10 ** rng.uniform(-1, 1)
        closed = float(rate_irs(p, real.gains(), IrsConfig(n, real.alpha), SIGMA2))
        gridded = brute_force_phase_rate(real, p, SIGMA2, grid)
        gap = closed - gridded
        rep.rows.append([i, n, closed, gridded, gap])
        if gridded > closed * (1 + 1e-12) or gap > tol:
            rep.failures.append(f"draw {i}: closed={closed} grid={gridded}")
    return rep


def prop1(seed: int = 0, draws: int = 1000, resolution: int = 10_000) -> Report:
    rng = np.random.default_rng(seed)
    rep = Report("prop1", seed, ["draw", "p1_closed", "p1_grid", "rate_closed", "rate_grid"])
    grid = GridSpec(resolution)
    for i in range(draws):
        gains = LinkGains.from_db(*rng.uniform(-120.0, -50.0, 3))
        p = 10 ** rng.uniform(-3, 1)
        split = optimal_df_power_split(p, gains)
        closed = float(rate_df_opt(p, gains, SIGMA2))
        found = brute_force_power_split(p, gains, SIGMA2, grid)
        rep.rows.append([i, split.p1, found.p1, closed, found.rate])
        if found.rate > closed * (1 + 1e-12):
            rep.failures.append(f"draw {i}: grid rate {found.rate} beats closed form {closed}")
        if abs(found.p1 - split.p1) > 2 * p / resolution * (1 + 1e-9):
            rep.failures.append(f"draw {i}: grid p1 {found.p1} vs closed {split.p1}")
    return rep


def prop2(seed: int = 0, draws: int = 1000) -> Report:
    rng = np.random.default_rng(seed)
    rep = Report("prop2", seed, ["draw", "threshold", "min_integer_n", "scan_n"])
    for i in range(draws):
        gains = scenario_like_gains(rng)
        alpha = float(rng.uniform(0.3, 1.0))
        # transmit SNR towards the relay between -10 and 40 dB
        p = 10 ** (rng.uniform(-10, 40) / 10) * SIGMA2 / gains.beta_sr
        th = min_elements_to_beat_df(p, gains, alpha, SIGMA2)
        n_max = max(10, 2 * th.min_integer_n + 10)
        scanned = brute_force_threshold_n(p, gains, alpha, SIGMA2, n_max)
        rep.rows.append([i, th.value, th.min_integer_n, scanned])
        if scanned != th.min_integer_n:
            rep.failures.append(f"draw {i}: scan {scanned} vs closed form {th.min_integer_n}")
    return rep


def _irs_total(r_bar, pm, gains, alpha, p_elem, n):
    return power_irs(r_bar, gains, IrsConfig(0, alpha, p_elem), pm.sigma2, n_elements=n) / pm.nu + n * p_elem


def prop3(seed: int = 0, draws: int = 1000) -> Report:
    rng = np.random.default_rng(seed)
    rep = Report("prop3", seed, ["draw", "n_real", "n_int", "scan_n", "min_second_diff"])
    for i in range(draws):
        gains = scenario_like_gains(rng)
        alpha = float(rng.uniform(0.3, 1.0))
        r_bar = float(rng.uniform(0.5, 12.0))
        p_elem = 10 ** rng.uniform(-4, -1)
        pm = PowerModel(0.0, SIGMA2, nu=float(rng.uniform(0.2, 1.0)), p_source=0.1, p_dest=0.1, p_relay=0.1)
        opt = optimal_n_ee(r_bar, pm.sigma2, alpha, gains, p_elem, nu=pm.nu)
        n_max = int(10 * max(1.0, opt.n_real)) + 2
        scanned = brute_force_optimal_n_ee(r_bar, pm, gains, alpha, p_elem, n_max)
        n = np.arange(0, n_max + 1)
        total = _irs_total(r_bar, pm, gains, alpha, p_elem, n) + pm.p_source + pm.p_dest
        second = total[2:] - 2 * total[1:-1] + total[:-2]
        floor = -1e-12 * float(np.max(total))
        rep.rows.append([i, opt.n_real, opt.n_int, scanned, float(np.min(second))])
        if scanned != opt.n_int:
            # an exact tie between neighbouring integers is not a disagreement
            if not math.isclose(total[scanned], total[opt.n_int], rel_tol=1e-13):
                rep.failures.append(f"draw {i}: scan {scanned} vs closed form {opt.n_int}")
        if np.min(second) < floor:
            rep.failures.append(f"draw {i}: second difference {np.min(second)} < 0")
    return rep


SUITES = {"lemma1": lemma1, "prop1": prop1, "prop2": prop2, "prop3": prop3}
