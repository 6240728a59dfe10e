from __future__ import annotations

from typing import Any, Dict, Literal, Tuple

from pydantic import root_validator

from ..constants import EXPECTATION_TOLERANCE
from .base import IdBenchModel
from .noise import NoiseParams

__all__ = ["MeasurementMode", "BenchmarkResult"]

MeasurementMode = Literal["exact", "shots"]


class BenchmarkResult(IdBenchModel):
    """Outcome of benchmarking one ID under one noise setting"""

    n_qubits: int
    n_rows: int
    eigenvalues: Tuple[int, ...]
    row_expectations: Tuple[float, ...]
    alpha: float
    score: float
    fid_bound: float
    true_fidelity: float
    noise: NoiseParams
    mode: MeasurementMode = "exact"

    @root_validator(skip_on_failure=True)
    def __check_alpha(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        alpha = sum(l * e for l, e in zip(values["eigenvalues"], values["row_expectations"]))
        if abs(alpha - values["alpha"]) > EXPECTATION_TOLERANCE:
            raise ValueError("alpha has to be the eigenvalue-weighted sum of the row expectations")
        return values

    @property
    def bound_gap(self) -> float:
        """F - F_ID, never negative in exact mode"""
        return self.true_fidelity - self.fid_bound

    @property
    def nonclassical(self) -> bool:
        return self.score > 0
