"""Scenario bundles and the flat key/value config format used by the CLI.

Keys carry their unit as a suffix (``_m``, ``_dbi``, ``_dbm``, ``_mw``, ``_hz``, ``_db``)
so a config file cannot silently mix units. Precedence: CLI flag > config file > preset.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping, Optional

import yaml

from irsdf.channel3gpp import Geometry, NoiseBudget, noise_power, scenario_gains
from irsdf.linkmath import IrsConfig, LinkGains, PowerModel
from irsdf.units import dbm_to_watts

CONFIG_ENV_VAR = "IRSDF_CONFIG"


class ConfigError(ValueError):
    """Invalid scenario configuration; the message starts with the offending key."""


@dataclass(frozen=True)
class ScenarioConfig:
    src_irs_distance_m: float = 80.0
    vertical_offset_m: float = 10.0
    d1_m: float = 70.0
    g_src_dbi: float = 5.0
    g_irs_dbi: float = 5.0
    g_dest_dbi: float = 0.0
    bandwidth_hz: float = 10e6
    noise_figure_db: float = 10.0
    alpha: float = 1.0
    nu: float = 0.5
    p_source_mw: float = 100.0
    p_dest_mw: float = 100.0
    p_relay_mw: float = 100.0
    p_elem_mw: float = 5.0
    n_elements: tuple = (25, 50, 100, 150)
    p_dbm: float = 20.0

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "n_elements":
                if not isinstance(value, (tuple, list)) or not value:
                    raise ConfigError("n_elements: must be a non-empty list of integers")
                for i, n in enumerate(value):
                    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
                        raise ConfigError(f"n_elements[{i}]: must be a nonnegative integer, got {n!r}")
                continue
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ConfigError(f"{f.name}: must be a finite number, got {value!r}")
        positive = ("src_irs_distance_m", "vertical_offset_m", "d1_m", "bandwidth_hz")
        for name in positive:
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name}: must be > 0, got {getattr(self, name)}")
        if not 0 < self.alpha <= 1:
            raise ConfigError(f"alpha: must lie in (0, 1], got {self.alpha}")
        if not 0 < self.nu <= 1:
            raise ConfigError(f"nu: must lie in (0, 1], got {self.nu}")
        for name in ("p_source_mw", "p_dest_mw", "p_relay_mw", "p_elem_mw"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name}: must be >= 0, got {getattr(self, name)}")

    def geometry(self, d1: Optional[float] = None) -> Geometry:
        return Geometry(self.src_irs_distance_m, self.vertical_offset_m, self.d1_m if d1 is None else d1)

    def gains(self, d1: Optional[float] = None) -> LinkGains:
        return scenario_gains(self.geometry(d1), self.g_src_dbi, self.g_irs_dbi, self.g_dest_dbi)

    @property
    def noise_budget(self) -> NoiseBudget:
        return NoiseBudget(self.bandwidth_hz, self.noise_figure_db)

    @property
    def sigma2(self) -> float:
        return noise_power(self.noise_budget)

    @property
    def p_elem(self) -> float:
        return self.p_elem_mw * 1e-3

    def power_model(self, p: Optional[float] = None) -> PowerModel:
        return PowerModel(
            p=dbm_to_watts(self.p_dbm) if p is None else p,
            sigma2=self.sigma2,
            nu=self.nu,
            p_source=self.p_source_mw * 1e-3,
            p_dest=self.p_dest_mw * 1e-3,
            p_relay=self.p_relay_mw * 1e-3,
        )

    def irs(self, n_elements: int = 0) -> IrsConfig:
        return IrsConfig(n_elements, self.alpha, self.p_elem)

    def canonical(self) -> str:
        """Single-line, key-sorted JSON; identical configs give identical strings."""
        d = asdict(self)
        d["n_elements"] = list(self.n_elements)
        return json.dumps(d, sort_keys=True, separators=(",", ":"))


PRESETS: dict[str, ScenarioConfig] = {"paper": ScenarioConfig()}

_FIELD_NAMES = {f.name for f in fields(ScenarioConfig)}


def _coerce(key: str, value: Any) -> Any:
    if key == "n_elements":
        if isinstance(value, int) and not isinstance(value, bool):
            value = [value]
        if not isinstance(value, (list, tuple)):
            raise ConfigError(f"n_elements: expected a list of integers, got {value!r}")
        return tuple(value)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            raise ConfigError(f"{key}: expected a number, got {value!r}") from None
    if isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    return value


def apply_overrides(base: ScenarioConfig, overrides: Mapping[str, Any]) -> ScenarioConfig:
    unknown = sorted(set(overrides) - _FIELD_NAMES)
    if unknown:
        raise ConfigError(f"{unknown[0]}: unknown key (valid keys: {', '.join(sorted(_FIELD_NAMES))})")
    return replace(base, **{k: _coerce(k, v) for k, v in overrides.items() if v is not None})


def load_config_file(path: str | os.PathLike) -> dict[str, Any]:
    """Read a flat ``key: value`` YAML mapping. Nested sections are rejected."""
    data = yaml.safe_load(Path(path).read_text()) or {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a flat key/value mapping")
    for key, value in data.items():
        if isinstance(value, dict):
            raise ConfigError(f"{key}: nested sections are not supported")
    return data


def resolve_config(
    preset: str = "paper",
    path: Optional[str | os.PathLike] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> ScenarioConfig:
    if preset not in PRESETS:
        raise ConfigError(f"preset: unknown preset {preset!r} (valid: {', '.join(PRESETS)})")
    cfg = PRESETS[preset]
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR) or None
    if path is not None:
        cfg = apply_overrides(cfg, load_config_file(path))
    if overrides:
        cfg = apply_overrides(cfg, overrides)
    return cfg
