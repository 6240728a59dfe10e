from __future__ import annotations

from typing import Any, Dict, List, Optional, Tuple

from pydantic import Field, root_validator, validator

from .. import errors
from ..pauli import LETTERS, PauliString, from_letters
from .base import IdBenchModel

__all__ = ["IdTable", "IdValidation", "CorrelatorReport", "SearchConstraints"]


class IdTable(IdBenchModel):
    """An M x N table of pauli letters with the eigenvalues of its rows

    Row i is the observable O_i, the ID sign is the sign of ∏ O_i.
    """

    letters: Tuple[str, ...]
    eigenvalues: Tuple[int, ...]
    sign: int = -1

    @validator("letters", pre=True)
    def __normalize_letters(cls, v: Any) -> Tuple[str, ...]:
        rows = tuple(str(row).strip().upper() for row in v)
        if not rows:
            raise ValueError("An ID needs at least one row")
        if any(not row or set(row) - set(LETTERS) for row in rows):
            raise ValueError(f"Rows may only contain the letters {LETTERS}")
        if len({len(row) for row in rows}) != 1:
            raise ValueError("All rows need the same number of qubits")
        return rows

    @validator("eigenvalues", pre=True)
    def __check_eigenvalues(cls, v: Any) -> Tuple[int, ...]:
        values = tuple(int(l) for l in v)
        if any(l not in (1, -1) for l in values):
            raise ValueError("Eigenvalues are +1 or -1")
        return values

    @validator("sign", pre=True)
    def __check_sign(cls, v: Any) -> int:
        if int(v) not in (1, -1):
            raise ValueError("The ID sign is +1 or -1")
        return int(v)

    @root_validator(skip_on_failure=True)
    def __check_shape(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        if len(values["eigenvalues"]) != len(values["letters"]):
            raise ValueError("Every row needs exactly one eigenvalue")
        return values

    @property
    def n_qubits(self) -> int:
        return len(self.letters[0])

    @property
    def n_rows(self) -> int:
        return len(self.letters)

    @property
    def rows(self) -> Tuple[PauliString, ...]:
        """The bare observables O_i"""
        return tuple(from_letters(row) for row in self.letters)

    @property
    def signed_rows(self) -> Tuple[PauliString, ...]:
        """The observables λ_i O_i, each stabilizing the target eigenspace"""
        return tuple(row if l > 0 else -row for row, l in zip(self.rows, self.eigenvalues))

    def reversed(self) -> IdTable:
        """The same ID on a qubit-reversed array"""
        return IdTable(letters=[row[::-1] for row in self.letters], eigenvalues=self.eigenvalues, sign=self.sign)

    def canonical(self) -> IdTable:
        """Rows sorted, the smaller of the ID and its qubit-reversal"""

        def ordered(table: IdTable) -> IdTable:
            pairs = sorted(zip(table.letters, table.eigenvalues))
            return IdTable(letters=[p[0] for p in pairs], eigenvalues=[p[1] for p in pairs], sign=table.sign)

        return min(ordered(self), ordered(self.reversed()), key=lambda t: t.key())

    def key(self) -> Tuple[Tuple[str, int], ...]:
        return tuple(zip(self.letters, self.eigenvalues))

    def __str__(self) -> str:
        rows = " ".join(f"{'+' if l > 0 else '-'}{row}" for row, l in zip(self.letters, self.eigenvalues))
        return f"ID(N={self.n_qubits}, M={self.n_rows}, sign={self.sign:+d}: {rows})"


class IdValidation(IdBenchModel):
    """A report of every way a table fails to be an ID"""

    sign: Optional[int] = None
    product: str
    non_commuting: List[Tuple[int, int]] = Field(default_factory=list)
    idle_qubits: List[int] = Field(default_factory=list)
    imaginary_product: bool = False
    not_identity: bool = False
    eigenvalue_mismatch: bool = False

    @property
    def failures(self) -> List[str]:
        """Names of the failed checks"""
        names = []
        if self.non_commuting:
            names.append("non_commuting_rows")
        if self.not_identity:
            names.append("product_not_identity")
        if self.imaginary_product:
            names.append("imaginary_product")
        if self.idle_qubits:
            names.append("idle_qubit")
        if self.eigenvalue_mismatch:
            names.append("eigenvalue_mismatch")
        return names

    @property
    def valid(self) -> bool:
        return not self.failures

    def raise_for_failures(self) -> None:
        """Raise the error matching the first failed check"""
        if self.non_commuting:
            pairs = ", ".join(f"({i + 1}, {k + 1})" for i, k in self.non_commuting)
            raise errors.NonCommutingRows(f"Rows {pairs} anticommute")
        if self.not_identity:
            raise errors.ProductNotIdentity(f"Rows multiply to {self.product}")
        if self.imaginary_product:
            raise errors.ImaginaryProduct(f"Rows multiply to {self.product}")
        if self.idle_qubits:
            qubits = ", ".join(str(j + 1) for j in self.idle_qubits)
            raise errors.IdleQubit(f"Qubits {qubits} only ever see I")
        if self.eigenvalue_mismatch:
            raise errors.EigenvalueMismatch(f"Eigenvalues do not multiply to the sign {self.sign:+d}")


class CorrelatorReport(IdBenchModel):
    """Expectation of a correlator together with every bound derived from it"""

    expectation: float
    n_rows: int
    beta_qm: int
    beta_lhvt: int
    beta_bisep: int
    score: float
    fid_bound: float

    @root_validator(pre=True)
    def __complete_bounds(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        """Derive the bounds from the expectation and the number of rows"""
        alpha, m = float(values["expectation"]), int(values["n_rows"])
        values.setdefault("beta_qm", m)
        values.setdefault("beta_lhvt", m - 2)
        values.setdefault("beta_bisep", m - 2)
        values.setdefault("score", (alpha - m + 2) / 2)
        values.setdefault("fid_bound", (alpha - m + 4) / 4)
        return values

    @property
    def violates_lhvt(self) -> bool:
        """Whether local hidden variables cannot explain the expectation"""
        return self.expectation > self.beta_lhvt

    @property
    def witnesses_entanglement(self) -> bool:
        """Whether no biseparable state reaches the expectation"""
        return self.expectation > self.beta_bisep


class SearchConstraints(IdBenchModel):
    """Which IDs a cluster-group search should return"""

    n_rows: int
    require_ghz: bool = True
    require_maxent: bool = True
    limit: Optional[int] = None
    canonical_dedup: bool = True

    @validator("n_rows")
    def __check_rows(cls, v: int) -> int:
        if v < 3:
            raise ValueError("IDs for benchmarks need at least 3 rows")
        return v

    @validator("limit")
    def __check_limit(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError("The limit has to be positive")
        return v
