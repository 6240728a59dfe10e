"""Constants for resource caps, chip presets and sweep defaults"""
from typing import Dict, NamedTuple, Tuple

__all__ = [
    "DENSE_QUBIT_CAP",
    "BIPARTITION_QUBIT_CAP",
    "LHVT_EXPONENT_CAP",
    "GROUP_QUBIT_CAP",
    "DENSE_CACHE_BYTES",
    "SINGLE_GATE_TIME",
    "TWO_GATE_TIME",
    "NOMINAL_PE",
    "T1_RANGE_US",
    "T2_RANGE_US",
    "W_RANGE",
    "MEDIAN_T2_US",
    "MEDIAN_W",
    "CHIP_QUBITS",
    "ChipValues",
    "CHIP_PRESETS",
    "ALGEBRA_TOLERANCE",
    "EXPECTATION_TOLERANCE",
]

# 4096² complex doubles is the desk-scale ceiling
DENSE_QUBIT_CAP = 12
BIPARTITION_QUBIT_CAP = 20
LHVT_EXPONENT_CAP = 18
GROUP_QUBIT_CAP = 24

# byte budget of each cache of dense matrices
DENSE_CACHE_BYTES = 128 * 2**20

ALGEBRA_TOLERANCE = 1e-12
EXPECTATION_TOLERANCE = 1e-9

# seconds
SINGLE_GATE_TIME = 25e-9
TWO_GATE_TIME = 45e-9

NOMINAL_PE = 0.02

T1_RANGE_US: Tuple[float, float] = (5.0, 50.0)
T2_RANGE_US: Tuple[float, float] = (1.0, 19.0)
W_RANGE: Tuple[float, float] = (0.05, 0.5)

MEDIAN_T2_US = 10.0
MEDIAN_W = 0.275

CHIP_QUBITS = 9


class ChipValues(NamedTuple):
    name: str
    t1_us: Tuple[float, ...]  # per chip qubit
    pe_percent: Tuple[float, ...]


_chip_presets = {
    "chip": (
        (18.6, 28.1, 22.0, 19.1, 41.1, 21.3, 39.2, 24.7, 26.3),
        (1.8, 1.1, 1.7, 1.3, 4.8, 0.7, 6.7, 0.4, 1.5),
    ),
}

CHIP_PRESETS: Dict[str, ChipValues] = {
    name: ChipValues(name, *data) for name, data in _chip_presets.items()
}
