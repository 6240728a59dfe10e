"""Dense density-matrix simulation of noisy cluster-state benchmarks

Every channel returns a new :class:`DensityMatrix`. Within a layer the ideal or
jittered unitaries come first, followed by first-order T1 decay and T2 dephasing of
every qubit for the duration of the layer.
"""
from __future__ import annotations

import functools
import logging
import math
from typing import Optional, Sequence, Tuple, Union

import cachetools
import numpy as np

from . import errors
from .benchmark import benchmark_score, eigenspace_projector, fidelity_lower_bound, require_valid
from .constants import ALGEBRA_TOLERANCE, DENSE_CACHE_BYTES, DENSE_QUBIT_CAP, EXPECTATION_TOLERANCE
from .models import BenchmarkResult, IdTable, MeasurementMode, NoiseParams
from .pauli import PauliString, as_pauli, expectation_value
from .utils.bits import basis_indices, index_mask, parity, popcount

__all__ = [
    "DensityMatrix",
    "init_state",
    "apply_y90",
    "apply_z90",
    "apply_zz90",
    "apply_cz",
    "apply_t1",
    "apply_t2",
    "jitter_contrast",
    "apply_jittered_zz90",
    "prepare_cluster",
    "measure_setting",
    "run_benchmark",
]

logger = logging.getLogger(__name__)

# first-order T1 is trusted up to this step
T1_STEP_WARNING = 0.05

_SQRT_HALF = 1 / math.sqrt(2)

# exp(-iYπ/4)
_Y90 = _SQRT_HALF * np.array([[1, -1], [1, 1]], dtype=complex)
# exp(+iYπ/4), maps X onto Z
_MEASURE_X = _SQRT_HALF * np.array([[1, 1], [-1, 1]], dtype=complex)
# exp(iπX/4), maps -Y onto Z
_MEASURE_Y = _SQRT_HALF * np.array([[1, 1j], [1j, 1]], dtype=complex)


class DensityMatrix:
    """A 2^N x 2^N state of N qubits, qubit 0 is the most significant index bit"""

    __slots__ = ("n_qubits", "data")

    def __init__(self, data: np.ndarray) -> None:
        data = np.asarray(data, dtype=complex)
        dim = data.shape[0] if data.ndim == 2 else 0
        if data.ndim != 2 or data.shape[1] != dim or dim < 2 or dim & (dim - 1):
            raise errors.DimensionMismatch(f"Density matrices are 2^N x 2^N, got shape {data.shape}")

        self.n_qubits = dim.bit_length() - 1
        self.data = data

    @classmethod
    def from_pure(cls, vector: Sequence[complex]) -> DensityMatrix:
        """|ψ⟩⟨ψ| of a normalized state vector"""
        psi = np.asarray(vector, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.data))

    @property
    def purity(self) -> float:
        return float(np.real(np.vdot(self.data.conj().T, self.data)))

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.data)[0])

    def is_hermitian(self, tol: float = ALGEBRA_TOLERANCE) -> bool:
        return bool(np.allclose(self.data, self.data.conj().T, rtol=0, atol=tol))

    def is_valid(self, tol: float = ALGEBRA_TOLERANCE, eig_tol: float = EXPECTATION_TOLERANCE) -> bool:
        """Hermitian, unit trace and (up to first-order T1 negativity) positive"""
        return (
            self.is_hermitian(tol)
            and abs(self.trace - 1) <= tol
            and self.min_eigenvalue >= -eig_tol
        )

    def expectation(self, p: Union[str, PauliString]) -> float:
        """Tr(ρ p) of a hermitian pauli string"""
        return expectation_value(as_pauli(p), self.data).real

    def fidelity(self, projector: np.ndarray) -> float:
        """Tr(ρ Π)"""
        return float(np.real(np.trace(self.data @ projector)))

    def __repr__(self) -> str:
        return f"<DensityMatrix n_qubits={self.n_qubits}>"


def _check_qubit(rho: DensityMatrix, qubit: int) -> None:
    if not 0 <= qubit < rho.n_qubits:
        raise errors.InputError(f"Qubit {qubit} is out of range for {rho.n_qubits} qubits")


def _check_pair(rho: DensityMatrix, pair: Tuple[int, int]) -> Tuple[int, int]:
    a, b = sorted(pair)
    _check_qubit(rho, a)
    _check_qubit(rho, b)
    if b - a != 1:
        raise errors.TopologyError(f"Qubits {pair} are not neighbours on the linear array")
    return a, b


def _z_values(n_qubits: int, qubit: int) -> np.ndarray:
    """+1 or -1 eigenvalue of Z on a qubit for every basis index"""
    return 1 - 2 * parity(basis_indices(n_qubits) & np.uint64(index_mask(1 << qubit, n_qubits)))


def _apply_single(rho: DensityMatrix, qubit: int, u: np.ndarray) -> DensityMatrix:
    """U ρ U† of a 2x2 unitary acting on one qubit"""
    _check_qubit(rho, qubit)
    n = rho.n_qubits
    tensor = rho.data.reshape((2,) * (2 * n))
    tensor = np.moveaxis(np.tensordot(u, tensor, axes=([1], [qubit])), 0, qubit)
    tensor = np.moveaxis(np.tensordot(tensor, u.conj().T, axes=([n + qubit], [0])), -1, n + qubit)
    return DensityMatrix(tensor.reshape(rho.dim, rho.dim))


def _apply_diagonal(rho: DensityMatrix, phases: np.ndarray) -> DensityMatrix:
    return DensityMatrix(phases[:, None] * rho.data * phases.conj()[None, :])


def init_state(n_qubits: int, init_error: Sequence[float]) -> DensityMatrix:
    """⊗_i [(1 - p_i)|0⟩⟨0| + p_i|1⟩⟨1|]

    :param n_qubits: The number of qubits
    :param init_error: The probability of every qubit to start excited
    :raises InputError: An error probability lies outside [0, 0.5)
    """
    if len(init_error) != n_qubits:
        raise errors.QubitMismatch(f"Need {n_qubits} init errors, got {len(init_error)}")
    if any(not 0 <= p < 0.5 for p in init_error):
        raise errors.InputError("Init errors have to lie in [0, 0.5)")
    if n_qubits > DENSE_QUBIT_CAP:
        raise errors.DenseCapExceeded(f"{n_qubits} qubits exceed the dense cap of {DENSE_QUBIT_CAP}")

    diagonal = functools.reduce(np.kron, (np.array([1 - p, p]) for p in init_error))
    return DensityMatrix(np.diag(diagonal).astype(complex))


def apply_y90(rho: DensityMatrix, qubit: int) -> DensityMatrix:
    """Conjugate by exp(-iYπ/4)"""
    return _apply_single(rho, qubit, _Y90)


def apply_z90(rho: DensityMatrix, qubit: int) -> DensityMatrix:
    """Conjugate by exp(iZπ/4)"""
    _check_qubit(rho, qubit)
    return _apply_diagonal(rho, np.exp(1j * math.pi / 4 * _z_values(rho.n_qubits, qubit)))


def apply_zz90(rho: DensityMatrix, pair: Tuple[int, int]) -> DensityMatrix:
    """Conjugate by exp(-iZZπ/4) on two neighbouring qubits

    :raises TopologyError: The qubits are not neighbours
    """
    a, b = _check_pair(rho, pair)
    zz = _z_values(rho.n_qubits, a) * _z_values(rho.n_qubits, b)
    return _apply_diagonal(rho, np.exp(-1j * math.pi / 4 * zz))


def apply_cz(rho: DensityMatrix, pair: Tuple[int, int], jitter_width: float = 0.0) -> DensityMatrix:
    """Controlled-Z as Z90 on both qubits followed by a (jittered) ZZ90, up to global phase"""
    a, b = _check_pair(rho, pair)
    rho = apply_z90(apply_z90(rho, a), b)
    return apply_jittered_zz90(rho, (a, b), jitter_width)


def apply_t1(rho: DensityMatrix, dt: float, t1_per_qubit: Sequence[float]) -> DensityMatrix:
    """First-order amplitude damping of every qubit towards |0⟩

    The corrections σ⁻ρσ⁺ - {n, ρ}/2 of all qubits are evaluated on the incoming state
    and accumulated. Infinite T1 values are skipped.

    :param rho: The state
    :param dt: The duration in seconds
    :param t1_per_qubit: T1 of every qubit in seconds
    """
    if len(t1_per_qubit) != rho.n_qubits:
        raise errors.QubitMismatch(f"Need {rho.n_qubits} T1 values, got {len(t1_per_qubit)}")

    n = rho.n_qubits
    indices = basis_indices(n).astype(np.int64)
    update = np.zeros_like(rho.data)
    for qubit, t1 in enumerate(t1_per_qubit):
        if math.isinf(t1):
            continue

        rate = dt / t1
        if rate > T1_STEP_WARNING:
            logger.warning("dt/T1 = %.3g on qubit %d, first-order T1 decay is inaccurate", rate, qubit)

        mask = index_mask(1 << qubit, n)
        excited = (indices & mask) != 0
        ground = indices[~excited]
        jump = np.zeros_like(rho.data)
        jump[np.ix_(ground, ground)] = rho.data[np.ix_(ground | mask, ground | mask)]

        weight = (excited[:, None].astype(float) + excited[None, :]) / 2
        update += rate * (jump - weight * rho.data)

    return DensityMatrix(rho.data + update)


_DEPHASING_CACHE: cachetools.LRUCache = cachetools.LRUCache(maxsize=DENSE_CACHE_BYTES, getsizeof=lambda m: m.nbytes)


@cachetools.cached(_DEPHASING_CACHE)
def _dephasing_matrix(n_qubits: int, dt: float, t2: float) -> np.ndarray:
    decay = math.exp(-dt / t2)
    matrix = functools.reduce(np.kron, [np.array([[1, decay], [decay, 1]])] * n_qubits)
    matrix.setflags(write=False)
    return matrix


def apply_t2(rho: DensityMatrix, dt: float, t2: float) -> DensityMatrix:
    """Element-wise dephasing, coherences decay by exp(-dt/T2) per flipped qubit"""
    if not t2 > 0:
        raise errors.InputError("T2 has to be positive")
    if math.isinf(t2):
        return rho

    return DensityMatrix(rho.data * _dephasing_matrix(rho.n_qubits, dt, t2))


def jitter_contrast(w: float) -> float:
    """E[cos δφ] of the raised-cosine density [1 + cos(πδφ/w)]/(2w) on [-w, w]

    Equals sin w/w - sin w/(2(w+π)) - sin w/(2(w-π)), written with sinc so w → 0 and
    w → π need no special casing.

    :raises InputError: w lies outside [0, π)
    """
    if not 0 <= w < math.pi:
        raise errors.InputError(f"The jitter width has to lie in [0, pi), got {w}")

    return float(np.sinc(w / math.pi) - math.sin(w) / (2 * (w + math.pi)) + np.sinc((w - math.pi) / math.pi) / 2)


def apply_jittered_zz90(rho: DensityMatrix, pair: Tuple[int, int], w: float) -> DensityMatrix:
    """ZZ90 with a raised-cosine distributed over-rotation, averaged in closed form

    The ideal gate is followed by ρ → (1+c)/2 ρ + (1-c)/2 ζρζ where ζ is the ZZ
    string on the pair and c = jitter_contrast(w).
    """
    c = jitter_contrast(w)
    rho = apply_zz90(rho, pair)
    if w == 0:
        return rho

    a, b = sorted(pair)
    zz = _z_values(rho.n_qubits, a) * _z_values(rho.n_qubits, b)
    same = np.equal.outer(zz, zz)
    return DensityMatrix(np.where(same, rho.data, c * rho.data))


def _decohere(rho: DensityMatrix, dt: float, noise: NoiseParams) -> DensityMatrix:
    return apply_t2(apply_t1(rho, dt, noise.t1_per_qubit), dt, noise.t2)


def prepare_cluster(n_qubits: int, noise: NoiseParams) -> DensityMatrix:
    """Run the three preparation layers of a linear cluster state

    Y90 on every qubit, then CZ on the pairs (0,1),(2,3),… and finally on
    (1,2),(3,4),…, each layer followed by decoherence for its gate time.

    :param n_qubits: The length of the chain, at least 2
    :param noise: The noise of every qubit
    :raises QubitMismatch: The noise describes a different number of qubits
    :raises DenseCapExceeded: The chain is too long for dense simulation
    """
    if n_qubits < 2:
        raise errors.InputError("A linear cluster state needs at least 2 qubits")
    if noise.n_qubits != n_qubits:
        raise errors.QubitMismatch(f"Noise for {noise.n_qubits} qubits cannot prepare {n_qubits} qubits")

    logger.debug("Preparing a %d-qubit cluster state", n_qubits)
    rho = init_state(n_qubits, noise.init_error)

    for qubit in range(n_qubits):
        rho = apply_y90(rho, qubit)
    rho = _decohere(rho, noise.dt_single, noise)

    for offset in (0, 1):
        pairs = [(a, a + 1) for a in range(offset, n_qubits - 1, 2)]
        if not pairs:
            continue
        for pair in pairs:
            rho = apply_cz(rho, pair, noise.jitter_width)
        rho = _decohere(rho, noise.dt_two, noise)

    return rho


def _rotate_for(rho: DensityMatrix, row: PauliString) -> DensityMatrix:
    for qubit, letter in enumerate(row.to_letters()):
        if letter == "X":
            rho = _apply_single(rho, qubit, _MEASURE_X)
        elif letter == "Y":
            rho = _apply_single(rho, qubit, _MEASURE_Y)
    return rho


def measure_setting(
    rho: DensityMatrix,
    row: Union[str, PauliString],
    mode: MeasurementMode = "exact",
    *,
    shots: int = 10000,
    seed: Optional[int] = None,
    noise: Optional[NoiseParams] = None,
) -> float:
    """Expectation of one ID row, measured in the state's computational basis

    Without noise the exact mode is the dense trace Tr(ρ O). Otherwise the basis
    change layer (exp(+iYπ/4) for X, exp(iπX/4) for Y) is applied, decohered for a
    single-qubit gate time when noise is given, and the Z string of the row support
    is read from the diagonal, exactly or by sampling.

    :param rho: The prepared state
    :param row: A hermitian pauli string, its sign multiplies the outcome
    :param mode: "exact" or "shots"
    :param shots: The number of samples in shots mode
    :param seed: The seed of the sampler in shots mode
    :param noise: Noise acting during the basis change layer
    :raises QubitMismatch: The row acts on a different number of qubits
    """
    row = as_pauli(row)
    if row.n_qubits != rho.n_qubits:
        raise errors.QubitMismatch(f"Cannot measure {row} on {rho.n_qubits} qubits")
    if not row.is_hermitian:
        raise errors.InputError(f"{row} is not an observable")

    if row.is_identity:
        return float(row.sign)
    if mode == "exact" and noise is None:
        return expectation_value(row, rho.data).real

    rotated = _rotate_for(rho, row)
    if noise is not None:
        rotated = _decohere(rotated, noise.dt_single, noise)

    n = rho.n_qubits
    outcomes = 1 - 2 * parity(basis_indices(n) & np.uint64(index_mask(row.support, n)))
    # U†ZU = -Y for the Y basis change
    sign = row.sign * (-1) ** popcount(row.y_bits)

    populations = np.real(np.diag(rotated.data))
    if mode == "exact":
        return float(sign * np.dot(populations, outcomes))

    probabilities = np.clip(populations, 0, None)
    probabilities /= probabilities.sum()

    rng = np.random.default_rng(seed)
    samples = rng.choice(len(probabilities), size=shots, p=probabilities)
    return float(sign * outcomes[samples].mean())


def run_benchmark(
    table: IdTable,
    noise: NoiseParams,
    mode: MeasurementMode = "exact",
    *,
    shots: int = 10000,
    seed: Optional[int] = None,
) -> BenchmarkResult:
    """Prepare the cluster state and measure every row of an ID

    Each measurement setting is an independent run of the same circuit. The exact
    ensemble is identical for every run, so it is prepared once and shared. Row i
    samples with seed + i in shots mode.

    :param table: A valid ID
    :param noise: The noise of the chain
    :param mode: "exact" or "shots"
    :param shots: The number of samples per row in shots mode
    :param seed: The base seed in shots mode
    """
    require_valid(table)
    rho = prepare_cluster(table.n_qubits, noise)
    measurement_noise = None if noise.is_ideal else noise

    expectations = tuple(
        measure_setting(
            rho,
            row,
            mode,
            shots=shots,
            seed=None if seed is None else seed + i,
            noise=measurement_noise,
        )
        for i, row in enumerate(table.rows)
    )
    alpha = sum(l * e for l, e in zip(table.eigenvalues, expectations))

    return BenchmarkResult(
        n_qubits=table.n_qubits,
        n_rows=table.n_rows,
        eigenvalues=table.eigenvalues,
        row_expectations=expectations,
        alpha=alpha,
        score=benchmark_score(alpha, table.n_rows),
        fid_bound=fidelity_lower_bound(alpha, table.n_rows),
        true_fidelity=rho.fidelity(eigenspace_projector(table)),
        noise=noise,
        mode=mode,
    )
