"""dB / dBm conversions.

Everything inside the package works in linear Watts and dimensionless power
gains. These helpers are meant for the edges: config parsing and table output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Union


@dataclass(frozen=True)
class Decibel:
    """A logarithmic quantity tagged as a power ratio (``dB``) or absolute power (``dBm``)."""

    value: float
    unit: Literal["dB", "dBm"] = "dB"

    def __post_init__(self) -> None:
        if self.unit not in ("dB", "dBm"):
            raise ValueError(f"unit must be 'dB' or 'dBm', got {self.unit!r}")
        if not math.isfinite(self.value):
            raise ValueError(f"decibel value must be finite, got {self.value}")

    def linear(self) -> float:
        return db_to_linear(self)


def db_to_linear(x: Union[Decibel, float]) -> float:
    """Convert dB to a linear ratio, or dBm to Watts when given a ``Decibel`` tagged ``dBm``.

    Plain floats are read as dB.

    >>> db_to_linear(-60.0)
    1e-06
    >>> db_to_linear(Decibel(30.0, "dBm"))
    1.0
    """
    if isinstance(x, Decibel):
        if x.unit == "dBm":
            return dbm_to_watts(x.value)
        x = x.value
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"dB value must be finite, got {x}")
    return 10.0 ** (x / 10.0)


def linear_to_db(x: float) -> float:
    """Power ratio to dB. ``x`` must be strictly positive."""
    if not x > 0 or not math.isfinite(x):
        raise ValueError(f"linear value must be positive and finite, got {x}")
    return 10.0 * math.log10(x)


def dbm_to_watts(x_dbm: float) -> float:
    x_dbm = float(x_dbm)
    if not math.isfinite(x_dbm):
        raise ValueError(f"dBm value must be finite, got {x_dbm}")
    return 10.0 ** ((x_dbm - 30.0) / 10.0)


def watts_to_dbm(p: float) -> float:
    return linear_to_db(p) + 30.0
