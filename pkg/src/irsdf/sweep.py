"""Parameter sweeps that regenerate the channel-gain, transmit-power and EE curves.

Sweeps are deterministic: the same ``SweepSpec`` always produces the same table.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np
from scipy.optimize import bisect

from irsdf import __version__
from irsdf.channel3gpp import AntennaGains, pathloss_umi
from irsdf.config import ScenarioConfig
from irsdf.energy import (
    energy_efficiency,
    optimal_n_ee,
    total_power_df,
    total_power_irs,
    total_power_siso,
)
from irsdf.powerctl import power_df, power_irs, power_siso
from irsdf.units import watts_to_dbm

MAX_POINTS = 10**6
CROSSOVER_XTOL = 1e-4


class SweepVariable(str, enum.Enum):
    DISTANCE = "Distance"
    D1 = "D1"
    RATE = "RateTarget"


@dataclass(frozen=True)
class SweepSpec:
    variable: SweepVariable
    start: float
    stop: float
    step: float
    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
    log_spaced: bool = False  # Distance sweeps only; ``step`` is then points per decade

    def __post_init__(self) -> None:
        if not self.start < self.stop:
            raise ValueError(f"sweep start must be below stop, got [{self.start}, {self.stop}]")
        if not self.step > 0:
            raise ValueError(f"sweep step must be > 0, got {self.step}")
        if self.n_points > MAX_POINTS:
            raise ValueError(f"sweep has {self.n_points} points, limit is {MAX_POINTS}")

    @property
    def n_points(self) -> int:
        if self.log_spaced:
            return int(round(math.log10(self.stop / self.start) * self.step)) + 1
        return int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1

    def values(self) -> np.ndarray:
        if self.log_spaced:
            return np.logspace(math.log10(self.start), math.log10(self.stop), self.n_points)
        # integer multiples of the step avoid accumulated float drift
        return self.start + self.step * np.arange(self.n_points)


@dataclass
class Table:
    """Column-named rows. Column names carry units in parentheses, e.g. ``d1(m)``."""

    columns: list[str]
    rows: list[list]
    config: str = ""

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# config: {self.config}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        records = [dict(zip(self.columns, row)) for row in self.rows]
        payload = {
            "tool": f"irsdf {__version__}",
            "config": json.loads(self.config) if self.config else {},
            "columns": self.columns,
            "rows": records,
        }
        return json.dumps(payload, indent=2, sort_keys=True, default=_json_default) + "\n"


def _fmt(v) -> str:
    if isinstance(v, (bool, str)):
        return str(v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.10g}"


def _json_default(v):
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    raise TypeError(type(v))


def _config_line(spec: SweepSpec, **extra) -> str:
    d = json.loads(spec.scenario.canonical())
    d["tool"] = f"irsdf {__version__}"
    d["sweep"] = {
        "variable": spec.variable.value,
        "start": spec.start,
        "stop": spec.stop,
        "step": spec.step,
        "log_spaced": spec.log_spaced,
        **extra,
    }
    return json.dumps(d, sort_keys=True, separators=(",", ":"))


def _require(spec: SweepSpec, variable: SweepVariable) -> None:
    if spec.variable is not variable:
        raise ValueError(f"expected a {variable.value} sweep, got {spec.variable.value}")


def sweep_channel_gain(spec: SweepSpec) -> Table:
    """LOS and NLOS UMi gain versus distance, with source and IRS antenna gains."""
    _require(spec, SweepVariable.DISTANCE)
    if spec.start < 10.0:
        raise ValueError("channel-gain sweep must start at d >= 10 m")
    ant = AntennaGains(spec.scenario.g_src_dbi, spec.scenario.g_irs_dbi)
    rows = [[float(d), pathloss_umi(d, True, ant), pathloss_umi(d, False, ant)] for d in spec.values()]
    return Table(["d(m)", "beta_los(dB)", "beta_nlos(dB)"], rows, _config_line(spec))


def sweep_power_vs_d1(spec: SweepSpec, r_bar: float) -> Table:
    """Transmit power needed for ``r_bar`` by SISO, DF (no mode selection) and each IRS size."""
    _require(spec, SweepVariable.D1)
    cfg = spec.scenario
    sigma2 = cfg.sigma2
    ns = list(cfg.n_elements)
    columns = ["d1(m)", "p_siso(dBm)", "p_df(dBm)"] + [f"p_irs_n{n}(dBm)" for n in ns]
    columns += ["p_siso(W)", "p_df(W)"] + [f"p_irs_n{n}(W)" for n in ns]
    rows = []
    for d1 in spec.values():
        gains = cfg.gains(float(d1))
        watts = [power_siso(r_bar, gains.beta_sd, sigma2), power_df(r_bar, gains, sigma2)]
        watts += [power_irs(r_bar, gains, cfg.irs(n), sigma2) for n in ns]
        rows.append([float(d1)] + [watts_to_dbm(w) for w in watts] + watts)
    return Table(columns, rows, _config_line(spec, r_bar=r_bar))


class EePoint(NamedTuple):
    ee_siso: float
    ee_df: float
    ee_irs: float
    n_opt: int
    n_opt_real: float
    p_total_siso: float
    p_total_df: float
    p_total_irs: float


def ee_point(cfg: ScenarioConfig, r_bar: float, d1: Optional[float] = None) -> EePoint:
    """EE of the three schemes at one rate, the IRS sized by the integer EE optimum."""
    gains = cfg.gains(d1)
    pm = cfg.power_model()
    opt = optimal_n_ee(r_bar, pm.sigma2, cfg.alpha, gains, cfg.p_elem, nu=pm.nu)
    t_siso = total_power_siso(r_bar, pm, gains.beta_sd)
    t_df = total_power_df(r_bar, pm, gains)
    t_irs = total_power_irs(r_bar, pm, gains, cfg.irs(opt.n_int))
    b = cfg.bandwidth_hz
    return EePoint(
        energy_efficiency(b, r_bar, t_siso),
        energy_efficiency(b, r_bar, t_df),
        energy_efficiency(b, r_bar, t_irs),
        opt.n_int,
        opt.n_real,
        t_siso.total,
        t_df.total,
        t_irs.total,
    )


def sweep_ee_vs_rate(spec: SweepSpec) -> Table:
    """EE versus rate target at the scenario's ``d1``; the IRS uses its EE-optimal size per row."""
    _require(spec, SweepVariable.RATE)
    if spec.start <= 0:
        raise ValueError("rate sweep must start above 0")
    columns = [
        "r_bar(bit/s/Hz)",
        "ee_siso(bit/J)",
        "ee_df(bit/J)",
        "ee_irs(bit/J)",
        "n_opt(elements)",
        "n_opt_real(elements)",
        "p_total_siso(W)",
        "p_total_df(W)",
        "p_total_irs(W)",
        "best(scheme)",
    ]
    rows = []
    for r in spec.values():
        pt = ee_point(spec.scenario, float(r))
        rows.append([float(r), *pt, _best(pt)])
    return Table(columns, rows, _config_line(spec))


class Crossover(NamedTuple):
    pair: str
    r_bar: Optional[float]  # None when no sign change was found in the bracket


def _bisect_sign_changes(f: Callable[[float], float], grid: np.ndarray) -> list[float]:
    vals = [f(x) for x in grid]
    roots = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa * fb < 0:
            roots.append(float(bisect(f, a, b, xtol=CROSSOVER_XTOL)))
    return roots


_EE_FIELD = {"Siso": "ee_siso", "DfRelay": "ee_df", "Irs": "ee_irs"}


def _best(pt: EePoint) -> str:
    # first maximum wins, so ties go to the simpler scheme
    return max(_EE_FIELD, key=lambda s: (getattr(pt, _EE_FIELD[s]), -list(_EE_FIELD).index(s)))


def solve_crossovers(spec: SweepSpec) -> list[Crossover]:
    """Rates where the most energy-efficient scheme changes, plus the onset of ``N_opt > 0``.

    The spec's rate grid brackets every change of the best scheme; bisection on
    the EE difference of the two schemes involved refines it to 1e-4 bit/s/Hz.
    Every scheme pair that never swaps places is reported with ``r_bar=None``.
    """
    _require(spec, SweepVariable.RATE)
    cfg = spec.scenario
    grid = spec.values()
    points = [ee_point(cfg, float(r)) for r in grid]
    found: dict[str, list[float]] = {"Siso/DfRelay": [], "DfRelay/Irs": [], "Siso/Irs": []}
    for a, b, pa, pb in zip(grid[:-1], grid[1:], points[:-1], points[1:]):
        s_a, s_b = _best(pa), _best(pb)
        if s_a == s_b:
            continue
        first, second = sorted((s_a, s_b), key=list(_EE_FIELD).index)

        def diff(r: float, first=first, second=second) -> float:
            pt = ee_point(cfg, r)
            return getattr(pt, _EE_FIELD[first]) - getattr(pt, _EE_FIELD[second])

        found[f"{first}/{second}"].append(float(bisect(diff, float(a), float(b), xtol=CROSSOVER_XTOL)))
    found["Irs n_opt>0 onset"] = _bisect_sign_changes(lambda r: ee_point(cfg, r).n_opt_real, grid)
    out = []
    for pair, roots in found.items():
        if not roots:
            out.append(Crossover(pair, None))
        out.extend(Crossover(pair, r) for r in roots)
    return out


def crossover_table(spec: SweepSpec) -> Table:
    rows = [[c.pair, "NotFound" if c.r_bar is None else c.r_bar] for c in solve_crossovers(spec)]
    return Table(["pair", "r_bar(bit/s/Hz)"], rows, _config_line(spec))


# figure id -> (variable, start, stop, step, extra kwargs)
FIGURES = {
    "2": (SweepVariable.DISTANCE, 10.0, 1000.0, 1.0, {}),
    "5a": (SweepVariable.D1, 10.0, 100.0, 1.0, {"r_bar": 4.0}),
    "5b": (SweepVariable.D1, 10.0, 100.0, 1.0, {"r_bar": 6.0}),
    "6": (SweepVariable.RATE, 0.05, 12.0, 0.05, {}),
}


def figure_table(figure: str, scenario: Optional[ScenarioConfig] = None) -> Table:
    if figure not in FIGURES:
        raise KeyError(f"unknown figure id {figure!r}; valid ids: {', '.join(FIGURES)}")
    variable, start, stop, step, extra = FIGURES[figure]
    spec = SweepSpec(variable, start, stop, step, scenario or ScenarioConfig())
    if variable is SweepVariable.DISTANCE:
        return sweep_channel_gain(spec)
    if variable is SweepVariable.D1:
        return sweep_power_vs_d1(spec, extra["r_bar"])
    return sweep_ee_vs_rate(spec)
