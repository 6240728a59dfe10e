from __future__ import annotations

import math
import statistics
from typing import Any, Dict, Tuple

from pydantic import root_validator, validator

from ..constants import CHIP_PRESETS, CHIP_QUBITS, MEDIAN_T2_US, MEDIAN_W, SINGLE_GATE_TIME, TWO_GATE_TIME
from .base import IdBenchModel

__all__ = ["NoiseParams", "ChipPreset"]

_US = 1e-6


class ChipPreset(IdBenchModel):
    """Per-qubit T1 and initialization error values of a physical chip"""

    name: str
    t1_us: Tuple[float, ...]
    pe_percent: Tuple[float, ...]

    @validator("t1_us", "pe_percent")
    def __check_length(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        if len(v) != CHIP_QUBITS:
            raise ValueError(f"Chip presets have exactly {CHIP_QUBITS} values")
        return v

    @classmethod
    def get(cls, name: str = "chip") -> ChipPreset:
        """Get a builtin preset by name"""
        try:
            values = CHIP_PRESETS[name]
        except KeyError:
            raise ValueError(f"Unknown chip preset {name!r}") from None
        return cls(name=values.name, t1_us=values.t1_us, pe_percent=values.pe_percent)

    @property
    def median_t1_us(self) -> float:
        return statistics.median(self.t1_us)

    @property
    def median_pe(self) -> float:
        """Median initialization error as a probability"""
        return statistics.median(self.pe_percent) / 100

    def last(self, n_qubits: int) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
        """T1 in seconds and init errors as probabilities of the last n chip qubits"""
        if not 1 <= n_qubits <= CHIP_QUBITS:
            raise ValueError(f"The chip has {CHIP_QUBITS} qubits, cannot use {n_qubits}")
        t1 = tuple(t * _US for t in self.t1_us[-n_qubits:])
        pe = tuple(p / 100 for p in self.pe_percent[-n_qubits:])
        return t1, pe


class NoiseParams(IdBenchModel):
    """Noise of a linear qubit array

    Times are in seconds, init errors are probabilities. Infinite times switch the
    corresponding decay off.
    """

    t1_per_qubit: Tuple[float, ...]
    t2: float = math.inf
    jitter_width: float = 0.0
    init_error: Tuple[float, ...]
    dt_single: float = SINGLE_GATE_TIME
    dt_two: float = TWO_GATE_TIME

    @validator("t1_per_qubit", each_item=True)
    def __check_t1(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("T1 has to be positive")
        return v

    @validator("t2", "dt_single", "dt_two")
    def __check_time(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("Times have to be positive")
        return v

    @validator("jitter_width")
    def __check_width(cls, v: float) -> float:
        if not 0 <= v < math.pi:
            raise ValueError("The jitter width has to lie in [0, pi)")
        return v

    @validator("init_error", each_item=True)
    def __check_init_error(cls, v: float) -> float:
        if not 0 <= v < 0.5:
            raise ValueError("Init errors have to lie in [0, 0.5)")
        return v

    @root_validator(skip_on_failure=True)
    def __check_lengths(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        if len(values["t1_per_qubit"]) != len(values["init_error"]):
            raise ValueError("T1 and init error need one value per qubit")
        return values

    @property
    def n_qubits(self) -> int:
        return len(self.t1_per_qubit)

    @property
    def is_ideal(self) -> bool:
        return (
            all(math.isinf(t) for t in self.t1_per_qubit)
            and math.isinf(self.t2)
            and self.jitter_width == 0
            and not any(self.init_error)
        )

    @classmethod
    def ideal(cls, n_qubits: int) -> NoiseParams:
        """No noise at all"""
        return cls(t1_per_qubit=(math.inf,) * n_qubits, init_error=(0.0,) * n_qubits)

    @classmethod
    def uniform(
        cls,
        n_qubits: int,
        *,
        t1: float = math.inf,
        t2: float = math.inf,
        jitter_width: float = 0.0,
        init_error: float = 0.0,
    ) -> NoiseParams:
        """The same T1 and init error on every qubit"""
        return cls(
            t1_per_qubit=(t1,) * n_qubits,
            t2=t2,
            jitter_width=jitter_width,
            init_error=(init_error,) * n_qubits,
        )

    @classmethod
    def from_preset(
        cls,
        n_qubits: int,
        preset: str = "chip",
        *,
        t2: float = MEDIAN_T2_US * _US,
        jitter_width: float = MEDIAN_W,
    ) -> NoiseParams:
        """Chip values of the last n qubits with a global T2 and jitter width"""
        t1, pe = ChipPreset.get(preset).last(n_qubits)
        return cls(t1_per_qubit=t1, t2=t2, jitter_width=jitter_width, init_error=pe)
