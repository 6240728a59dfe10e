"""Identity products: validation, GHZ and entanglement predicates, correlators and bounds"""
from __future__ import annotations

import functools
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from . import errors
from .constants import BIPARTITION_QUBIT_CAP, DENSE_QUBIT_CAP, LHVT_EXPONENT_CAP
from .models import CorrelatorReport, IdTable, IdValidation
from .pauli import anticommuting_sites, commutes, expectation_value, product, to_matrix
from .utils.bits import parity

__all__ = [
    "validate_id",
    "require_valid",
    "ghz_parity_check",
    "is_maximally_entangled",
    "anticommutation_rank",
    "correlator_expectation",
    "correlator_matrix",
    "benchmark_score",
    "fidelity_lower_bound",
    "eigenspace_projector",
    "eigenspace_patterns",
    "flip_eigenvalues",
    "logical_qubits",
    "lhvt_max_brute",
]

logger = logging.getLogger(__name__)

_LHVT_CHUNK = 1 << 16


def validate_id(table: IdTable) -> IdValidation:
    """Check every ID invariant of a table without raising

    :param table: A well-formed table
    :returns: A report with the computed product sign and every failure
    """
    rows = table.rows
    non_commuting = [(i, k) for i, k in itertools.combinations(range(len(rows)), 2) if not commutes(rows[i], rows[k])]

    total = product(rows)
    sign = None
    not_identity = not total.is_identity
    imaginary = not not_identity and not total.is_hermitian
    if not not_identity and not imaginary:
        sign = total.sign

    support = functools.reduce(lambda a, b: a | b, (row.support for row in rows))
    idle = [j for j in range(table.n_qubits) if not support >> j & 1]

    mismatch = False
    if sign is not None:
        mismatch = sign != table.sign or int(np.prod(table.eigenvalues)) != sign

    return IdValidation(
        sign=sign,
        product=str(total),
        non_commuting=non_commuting,
        idle_qubits=idle,
        imaginary_product=imaginary,
        not_identity=not_identity,
        eigenvalue_mismatch=mismatch,
    )


def require_valid(table: IdTable) -> IdValidation:
    """Validate a table and raise the matching InvalidID error on failure"""
    validation = validate_id(table)
    validation.raise_for_failures()
    return validation


def ghz_parity_check(table: IdTable) -> bool:
    """Whether the ID proves the GHZ theorem

    That is the case when the sign is -1 and every column holds an even number of
    each of X, Y and Z.

    :raises InvalidID: The table is not an ID
    """
    require_valid(table)
    if table.sign != -1:
        return False

    for j in range(table.n_qubits):
        column = [row[j] for row in table.letters]
        if any(column.count(letter) % 2 for letter in "XYZ"):
            return False

    return True


def _anticommutation_masks(table: IdTable) -> List[int]:
    rows = table.rows
    masks = {anticommuting_sites(p, q) for p, q in itertools.combinations(rows, 2)}
    masks.discard(0)
    return sorted(masks)


def anticommutation_rank(table: IdTable) -> int:
    """GF(2) rank of the per-row-pair anticommutation site masks

    The ID is maximally entangled exactly when the rank is N - 1, i.e. the masks span
    every even subset of qubits.
    """
    basis: Dict[int, int] = {}  # leading bit -> reduced vector
    for vector in _anticommutation_masks(table):
        while vector:
            lead = vector.bit_length() - 1
            if lead not in basis:
                basis[lead] = vector
                break
            vector ^= basis[lead]

    return len(basis)


def is_maximally_entangled(table: IdTable, *, cap: int = BIPARTITION_QUBIT_CAP) -> bool:
    """Whether no bipartition of the qubits leaves the restricted rows commuting

    Every bipartition is enumerated; the last qubit is always kept on the B side.

    :param table: A valid ID
    :param cap: The largest number of qubits to enumerate bipartitions for
    :raises EnumerationCapExceeded: The table has more than cap qubits
    """
    require_valid(table)
    n = table.n_qubits
    if n > cap:
        raise errors.EnumerationCapExceeded(f"{2 ** (n - 1) - 1} bipartitions of {n} qubits exceed the cap of {cap} qubits")
    if n == 1:
        return True

    sides = np.arange(1, 2 ** (n - 1), dtype=np.uint64)
    separated = np.zeros(len(sides), dtype=bool)
    for mask in _anticommutation_masks(table):
        separated |= parity(sides & np.uint64(mask)).astype(bool)

    return bool(separated.all())


def _as_array(rho: Any) -> np.ndarray:
    return rho if isinstance(rho, np.ndarray) else np.asarray(rho.data)


def correlator_expectation(table: IdTable, rho: Any) -> CorrelatorReport:
    """⟨α⟩ = Σ_i λ_i Tr(ρ O_i) together with its bounds

    :param table: A valid ID
    :param rho: A density matrix (array or DensityMatrix) on the ID's qubits
    :raises DimensionMismatch: The state has the wrong dimension
    """
    require_valid(table)
    data = _as_array(rho)
    alpha = sum(l * expectation_value(row, data).real for l, row in zip(table.eigenvalues, table.rows))
    return CorrelatorReport(expectation=alpha, n_rows=table.n_rows)


def correlator_matrix(table: IdTable, *, cap: int = DENSE_QUBIT_CAP) -> np.ndarray:
    """Dense α = Σ_i λ_i O_i"""
    return sum(l * to_matrix(row, cap=cap) for l, row in zip(table.eigenvalues, table.rows))


def benchmark_score(alpha_exp: float, n_rows: int) -> float:
    """Nonclassicality score (⟨α⟩ - M + 2) / 2, positive values witness nonclassicality"""
    return (alpha_exp - n_rows + 2) / 2


def fidelity_lower_bound(alpha_exp: float, n_rows: int) -> float:
    """Lower bound (⟨α⟩ - M + 4) / 4 on the fidelity with the target eigenspace"""
    return (alpha_exp - n_rows + 4) / 4


def logical_qubits(table: IdTable) -> int:
    """N - M + 1, every joint eigenspace has dimension 2 to this power"""
    return table.n_qubits - table.n_rows + 1


def eigenspace_projector(table: IdTable, *, cap: int = DENSE_QUBIT_CAP) -> np.ndarray:
    """Π = ∏_i (I + λ_i O_i) / 2

    :raises DenseCapExceeded: The ID acts on more than cap qubits
    """
    require_valid(table)
    dim = 2**table.n_qubits
    if table.n_qubits > cap:
        raise errors.DenseCapExceeded(f"A dense {table.n_qubits}-qubit projector exceeds the cap of {cap} qubits")

    projector = np.eye(dim, dtype=complex)
    for row in table.signed_rows:
        projector = projector @ (np.eye(dim) + to_matrix(row, cap=cap)) / 2

    return projector


def eigenspace_patterns(table: IdTable) -> List[Tuple[int, ...]]:
    """Every eigenvalue pattern of a joint eigenspace, the table's own pattern first

    The last eigenvalue follows from the others since they multiply to the sign.
    """
    m = table.n_rows
    patterns = []
    for flips in itertools.product((1, -1), repeat=m - 1):
        head = tuple(l * f for l, f in zip(table.eigenvalues, flips))
        last = table.sign * int(np.prod(head))
        patterns.append(head + (last,))

    return patterns


def flip_eigenvalues(table: IdTable, i: int, k: int) -> IdTable:
    """The same ID targeting the eigenspace with the eigenvalues of rows i and k flipped"""
    if i == k:
        raise errors.InputError("Flipping a single eigenvalue breaks the sign of the ID")

    eigenvalues = list(table.eigenvalues)
    eigenvalues[i] *= -1
    eigenvalues[k] *= -1
    return IdTable(letters=table.letters, eigenvalues=eigenvalues, sign=table.sign)


def _hidden_variables(table: IdTable) -> Tuple[int, List[int]]:
    """Assign one bit to every (qubit, letter) a hidden variable is needed for"""
    index: Dict[Tuple[int, str], int] = {}
    for j in range(table.n_qubits):
        for letter in sorted({row[j] for row in table.letters} - {"I"}):
            index[j, letter] = len(index)

    masks = [
        sum(1 << index[j, letter] for j, letter in enumerate(row) if letter != "I") for row in table.letters
    ]
    return len(index), masks


def _lhvt_chunk(start: int, stop: int, masks: Sequence[int], eigenvalues: Sequence[int]) -> int:
    assignments = np.arange(start, stop, dtype=np.uint64)
    total = np.zeros(len(assignments), dtype=np.int64)
    for mask, l in zip(masks, eigenvalues):
        total += l * (1 - 2 * parity(assignments & np.uint64(mask)))

    return int(total.max())


def lhvt_max_brute(
    table: IdTable,
    *,
    cap: int = LHVT_EXPONENT_CAP,
    workers: int = 1,
    require_parity: bool = True,
) -> int:
    """Largest correlator value any local hidden variable assignment reaches

    Only hidden variables for letters present in a column are enumerated. The
    assignment range is split into chunks which may be evaluated in parallel.

    :param table: A valid ID
    :param cap: The largest number of hidden variables to enumerate
    :param workers: The number of threads evaluating chunks
    :param require_parity: Reject IDs which do not satisfy the GHZ parity condition
    :raises NotGHZParity: The ID does not prove the GHZ theorem
    :raises EnumerationCapExceeded: Too many hidden variables
    """
    if require_parity and not ghz_parity_check(table):
        raise errors.NotGHZParity(str(table))
    require_valid(table)

    n_vars, masks = _hidden_variables(table)
    if n_vars > cap:
        raise errors.EnumerationCapExceeded(
            f"{n_vars} hidden variables exceed the cap of {cap}; "
            "reduce the columns to fewer distinct letters or raise the cap"
        )

    total = 1 << n_vars
    bounds = [(start, min(start + _LHVT_CHUNK, total)) for start in range(0, total, _LHVT_CHUNK)]
    logger.debug("Enumerating %d hidden variable assignments in %d chunks", total, len(bounds))

    def run(bound: Tuple[int, int]) -> int:
        return _lhvt_chunk(bound[0], bound[1], masks, table.eigenvalues)

    if workers > 1:
        with ThreadPoolExecutor(workers) as executor:
            return max(executor.map(run, bounds))

    return max(map(run, bounds))
