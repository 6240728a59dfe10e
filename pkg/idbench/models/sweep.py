from __future__ import annotations

import math
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import root_validator, validator

from .. import errors
from ..constants import CHIP_PRESETS
from .base import IdBenchModel
from .results import MeasurementMode

__all__ = ["SweepSpec", "SweepPoint", "SweepRow"]

_KEYS = {
    "n_list",
    "t1_preset",
    "t1_range",
    "t1_value",
    "t2_range",
    "t2_value",
    "w_range",
    "w_value",
    "pe_preset",
    "pe_value",
    "points_per_axis",
    "mode",
    "shots",
    "seed",
    "workers",
}


def _floats(text: str) -> List[float]:
    return [math.inf if item.strip().lower() in ("inf", "infinity") else float(item) for item in text.split(",")]


def _values(text: str) -> List[Union[float, str]]:
    """Explicit axis values, chip preset names are kept as names"""
    items = [item.strip() for item in text.split(",")]
    return [item if item in CHIP_PRESETS else _floats(item)[0] for item in items]


def _axis(raw: Dict[str, str], name: str, points: int) -> Optional[Tuple[Union[float, str], ...]]:
    if f"{name}_range" in raw:
        bounds = _floats(raw[f"{name}_range"])
        if len(bounds) != 2:
            raise errors.InvalidSweepSpec(f"{name}_range needs exactly two bounds")
        return tuple(float(x) for x in np.linspace(bounds[0], bounds[1], points))
    if f"{name}_value" in raw:
        return tuple(_values(raw[f"{name}_value"]))
    return None


class SweepPoint(IdBenchModel):
    """One point of a sweep grid"""

    index: Tuple[int, ...]
    n_qubits: int
    t1: Union[float, str]  # µs or a preset name
    t2_us: float
    w_rad: float
    pe: Union[float, str]  # probability or a preset name

    @property
    def t1_source(self) -> str:
        return _source(self.t1)

    @property
    def pe_source(self) -> str:
        return _source(self.pe)


def _source(value: Union[float, str]) -> str:
    return value if isinstance(value, str) else repr(float(value))


def _check_preset_name(name: str) -> str:
    if name not in CHIP_PRESETS:
        raise ValueError(f"Unknown chip preset {name!r}")
    return name


class SweepSpec(IdBenchModel):
    """A cartesian grid of noise settings for several qubit counts

    T1 and T2 are given in µs, init errors as probabilities. The T1 and init error
    axes may mix numbers with chip preset names.
    """

    n_list: Tuple[int, ...]
    t1_preset: Optional[str] = None
    t1_us: Tuple[Union[float, str], ...] = (math.inf,)
    t2_us: Tuple[float, ...] = (math.inf,)
    w_rad: Tuple[float, ...] = (0.0,)
    pe_preset: Optional[str] = None
    pe: Tuple[Union[float, str], ...] = (0.0,)
    points_per_axis: int = 10
    mode: MeasurementMode = "exact"
    shots: int = 10000
    seed: int = 0
    workers: int = 1

    @validator("n_list", "t1_us", "t2_us", "w_rad", "pe")
    def __check_nonempty(cls, v: Tuple[Any, ...]) -> Tuple[Any, ...]:
        if not v:
            raise ValueError("Grid axes cannot be empty")
        return v

    @validator("n_list", each_item=True)
    def __check_n(cls, v: int) -> int:
        if v < 2:
            raise ValueError("Benchmarks need at least 2 qubits")
        return v

    @validator("t1_us", "t2_us", each_item=True)
    def __check_times(cls, v: Union[float, str]) -> Union[float, str]:
        if isinstance(v, str):
            return _check_preset_name(v)
        if not v > 0:
            raise ValueError("Times have to be positive")
        return v

    @validator("w_rad", each_item=True)
    def __check_width(cls, v: float) -> float:
        if not 0 <= v < math.pi:
            raise ValueError("Jitter widths have to lie in [0, pi)")
        return v

    @validator("pe", each_item=True)
    def __check_pe(cls, v: Union[float, str]) -> Union[float, str]:
        if isinstance(v, str):
            return _check_preset_name(v)
        if not 0 <= v < 0.5:
            raise ValueError("Init errors have to lie in [0, 0.5)")
        return v

    @validator("t1_preset", "pe_preset")
    def __check_preset(cls, v: Optional[str]) -> Optional[str]:
        return v if v is None else _check_preset_name(v)

    @root_validator(skip_on_failure=True)
    def __check_counts(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        if values["points_per_axis"] < 1 or values["shots"] < 1 or values["workers"] < 1:
            raise ValueError("points_per_axis, shots and workers have to be positive")
        return values

    @classmethod
    def parse_text(cls, text: str) -> SweepSpec:
        """Parse the line-oriented key=value format

        Blank lines and lines starting with # are ignored. Ranges "a,b" expand to
        points_per_axis evenly spaced values, "_value" keys take explicit lists.

        :raises InvalidSweepSpec: Unknown keys or malformed values
        """
        raw: Dict[str, str] = {}
        for number, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise errors.InvalidSweepSpec(f"Line {number} is not a key=value pair: {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _KEYS:
                raise errors.InvalidSweepSpec(f"Unknown key {key!r} on line {number}")
            raw[key] = value

        if "n_list" not in raw:
            raise errors.InvalidSweepSpec("n_list is required")

        try:
            points = int(raw.get("points_per_axis", 10))
            data: Dict[str, Any] = {
                "n_list": tuple(int(n) for n in raw["n_list"].split(",")),
                "points_per_axis": points,
                "mode": raw.get("mode", "exact"),
                "shots": int(raw.get("shots", 10000)),
                "seed": int(raw.get("seed", 0)),
                "workers": int(raw.get("workers", 1)),
                "t1_preset": raw.get("t1_preset"),
                "pe_preset": raw.get("pe_preset"),
            }
            for name, field in (("t1", "t1_us"), ("t2", "t2_us"), ("w", "w_rad"), ("pe", "pe")):
                axis = _axis(raw, name, points)
                if axis is not None:
                    data[field] = axis

            return cls(**data)
        except errors.InvalidSweepSpec:
            raise
        except ValueError as e:
            raise errors.InvalidSweepSpec(str(e)) from e

    @classmethod
    def parse_spec_file(cls, path: str) -> SweepSpec:
        with open(path, encoding="utf-8") as file:
            return cls.parse_text(file.read())

    @property
    def t1_axis(self) -> Tuple[Union[float, str], ...]:
        return (self.t1_preset,) if self.t1_preset else self.t1_us

    @property
    def pe_axis(self) -> Tuple[Union[float, str], ...]:
        return (self.pe_preset,) if self.pe_preset else self.pe

    @property
    def grid_size(self) -> int:
        return len(self.t1_axis) * len(self.t2_us) * len(self.w_rad) * len(self.pe_axis)

    def points(self) -> List[SweepPoint]:
        """Every grid point, lexicographic over (n, t1, t2, w, pe) indices"""
        return [
            SweepPoint(index=(a, b, c, d, e), n_qubits=n, t1=t1, t2_us=t2, w_rad=w, pe=pe)
            for a, n in enumerate(self.n_list)
            for b, t1 in enumerate(self.t1_axis)
            for c, t2 in enumerate(self.t2_us)
            for d, w in enumerate(self.w_rad)
            for e, pe in enumerate(self.pe_axis)
        ]


class SweepRow(IdBenchModel):
    """One row of a sweep result table"""

    n: int
    m: int
    t2_us: float
    w_rad: float
    t1_source: str
    pe_source: str
    alpha: float
    b_score: float
    f_id: float
    f_true: float
    row_expectations: Tuple[float, ...]
