"""Signed N-qubit Pauli strings in the symplectic (x-bits, z-bits, phase) form"""
from __future__ import annotations

import functools
import re
from typing import Any, Iterable, Iterator, Sequence, Union

import cachetools
import numpy as np

from . import errors
from .constants import DENSE_CACHE_BYTES, DENSE_QUBIT_CAP
from .utils.bits import basis_indices, index_mask, parity, popcount

__all__ = [
    "LETTERS",
    "PHASE_TOKENS",
    "PauliString",
    "from_letters",
    "multiply",
    "commutes",
    "to_matrix",
    "expectation_value",
    "as_pauli",
    "product",
    "anticommuting_sites",
]

LETTERS = "IXYZ"

PHASE_TOKENS = {0: "+", 1: "+i", 2: "-", 3: "-i"}

_PHASE_VALUES = (1, 1j, -1, -1j)

# (x, z) -> letter
_BITS_TO_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_LETTER_TO_BITS = {v: k for k, v in _BITS_TO_LETTER.items()}

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_PATTERN = re.compile(r"([+-]i?)?([IXYZ]+)")


class PauliString:
    """An operator i^phase_exp · ⊗_j letter_j

    Bit j of x_bits and z_bits describes qubit j. Y is stored as x=z=1 and the phase
    always refers to the letter form, so no Y bookkeeping leaks into phase_exp.
    """

    __slots__ = ("n_qubits", "x_bits", "z_bits", "phase_exp")

    n_qubits: int
    x_bits: int
    z_bits: int
    phase_exp: int

    def __init__(self, n_qubits: int, x_bits: int = 0, z_bits: int = 0, phase_exp: int = 0) -> None:
        if n_qubits < 1:
            raise errors.InvalidPauliString()
        full = (1 << n_qubits) - 1
        if x_bits & ~full or z_bits & ~full:
            raise errors.InvalidPauliString(f"Bits do not fit into {n_qubits} qubits")

        object.__setattr__(self, "n_qubits", n_qubits)
        object.__setattr__(self, "x_bits", x_bits)
        object.__setattr__(self, "z_bits", z_bits)
        object.__setattr__(self, "phase_exp", phase_exp % 4)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def parse(cls, text: str) -> PauliString:
        """Parse the textual format, an optional "+", "-", "+i" or "-i" followed by letters

        :param text: A pauli string like "-YXY"
        """
        match = _PATTERN.fullmatch(text.strip())
        if match is None:
            raise errors.InvalidPauliString(f"Invalid pauli string: {text!r}")

        token = match.group(1) or "+"
        phase = {v: k for k, v in PHASE_TOKENS.items()}[token]
        p = from_letters(match.group(2))
        return cls(p.n_qubits, p.x_bits, p.z_bits, phase)

    @classmethod
    def identity(cls, n_qubits: int) -> PauliString:
        return cls(n_qubits)

    def letter(self, qubit: int) -> str:
        return _BITS_TO_LETTER[(self.x_bits >> qubit) & 1, (self.z_bits >> qubit) & 1]

    def to_letters(self) -> str:
        """The letters without any phase"""
        return "".join(self.letter(j) for j in range(self.n_qubits))

    @property
    def support(self) -> int:
        """Mask of the qubits with a letter other than I"""
        return self.x_bits | self.z_bits

    @property
    def y_bits(self) -> int:
        return self.x_bits & self.z_bits

    @property
    def weight(self) -> int:
        return popcount(self.support)

    @property
    def is_hermitian(self) -> bool:
        return self.phase_exp % 2 == 0

    @property
    def sign(self) -> int:
        """The real sign of a hermitian string"""
        if not self.is_hermitian:
            raise errors.InputError(f"{self} has an imaginary phase")
        return 1 if self.phase_exp == 0 else -1

    @property
    def is_identity(self) -> bool:
        return self.support == 0

    def with_phase(self, phase_exp: int) -> PauliString:
        return PauliString(self.n_qubits, self.x_bits, self.z_bits, phase_exp)

    def unsigned(self) -> PauliString:
        return self.with_phase(0)

    def reversed(self) -> PauliString:
        """The same string on a qubit-reversed array"""
        n = self.n_qubits

        def flip(bits: int) -> int:
            return sum(1 << (n - 1 - j) for j in range(n) if bits >> j & 1)

        return PauliString(n, flip(self.x_bits), flip(self.z_bits), self.phase_exp)

    def __mul__(self, other: PauliString) -> PauliString:
        return multiply(self, other)

    def __neg__(self) -> PauliString:
        return self.with_phase(self.phase_exp + 2)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliString):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __lt__(self, other: PauliString) -> bool:
        return (self.to_letters(), self.phase_exp) < (other.to_letters(), other.phase_exp)

    def __len__(self) -> int:
        return self.n_qubits

    def __iter__(self) -> Iterator[str]:
        return iter(self.to_letters())

    def _key(self) -> tuple:
        return (self.n_qubits, self.x_bits, self.z_bits, self.phase_exp)

    def __str__(self) -> str:
        return PHASE_TOKENS[self.phase_exp] + self.to_letters()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


PauliLike = Union[PauliString, str]


def as_pauli(p: PauliLike) -> PauliString:
    return p if isinstance(p, PauliString) else PauliString.parse(p)


def from_letters(letters: Union[str, Sequence[str]]) -> PauliString:
    """Create an unsigned pauli string from letters

    :param letters: A sequence of letters from IXYZ
    :raises InvalidPauliString: The sequence is empty or has other letters
    """
    letters = "".join(letters).upper()
    if not letters:
        raise errors.InvalidPauliString()

    x_bits = z_bits = 0
    for j, letter in enumerate(letters):
        if letter not in _LETTER_TO_BITS:
            raise errors.InvalidPauliString(f"Invalid letter {letter!r}")
        x, z = _LETTER_TO_BITS[letter]
        x_bits |= x << j
        z_bits |= z << j

    return PauliString(len(letters), x_bits, z_bits, 0)


def _check_sizes(p: PauliString, q: PauliString) -> None:
    if p.n_qubits != q.n_qubits:
        raise errors.QubitMismatch(f"{p} acts on {p.n_qubits} qubits but {q} on {q.n_qubits}")


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Exact product p·q

    Each string is rewritten as i^(phase + #Y) X^x Z^z, the Z part of p is moved past
    the X part of q and the result is brought back to letter form.

    :raises QubitMismatch: The strings act on a different number of qubits
    """
    _check_sizes(p, q)

    phase = p.phase_exp + popcount(p.y_bits) + q.phase_exp + popcount(q.y_bits)
    phase += 2 * popcount(p.z_bits & q.x_bits)

    x_bits = p.x_bits ^ q.x_bits
    z_bits = p.z_bits ^ q.z_bits
    phase -= popcount(x_bits & z_bits)

    return PauliString(p.n_qubits, x_bits, z_bits, phase)


def product(strings: Iterable[PauliString]) -> PauliString:
    """Ordered product of several strings"""
    return functools.reduce(multiply, strings)


def anticommuting_sites(p: PauliString, q: PauliString) -> int:
    """Mask of the qubits on which the letters of p and q anticommute"""
    _check_sizes(p, q)
    return (p.x_bits & q.z_bits) ^ (p.z_bits & q.x_bits)


def commutes(p: PauliString, q: PauliString) -> bool:
    """Whether p and q commute, i.e. they anticommute on an even number of qubits

    :raises QubitMismatch: The strings act on a different number of qubits
    """
    return popcount(anticommuting_sites(p, q)) % 2 == 0


# matrices larger than the whole budget are returned without caching
_MATRIX_CACHE: cachetools.LRUCache = cachetools.LRUCache(maxsize=DENSE_CACHE_BYTES, getsizeof=lambda m: m.nbytes)


@cachetools.cached(_MATRIX_CACHE, key=lambda p, cap=DENSE_QUBIT_CAP: (p._key(), cap))
def to_matrix(p: PauliString, cap: int = DENSE_QUBIT_CAP) -> np.ndarray:
    """Dense kronecker-product matrix of a pauli string

    The returned array is read-only since it is shared through a cache.

    :param p: A pauli string
    :param cap: The largest number of qubits a dense matrix may have
    :raises DenseCapExceeded: The string acts on more than cap qubits
    """
    if p.n_qubits > cap:
        raise errors.DenseCapExceeded(f"A dense {p.n_qubits}-qubit matrix exceeds the cap of {cap} qubits")

    matrix = functools.reduce(np.kron, (_SINGLE[letter] for letter in p.to_letters()))
    matrix = matrix * _PHASE_VALUES[p.phase_exp]
    matrix.setflags(write=False)
    return matrix


def expectation_value(p: PauliString, rho: np.ndarray) -> complex:
    """Tr(ρ p) without building the dense matrix of p

    :param p: A pauli string
    :param rho: A 2^N x 2^N density matrix
    """
    dim = 2**p.n_qubits
    if rho.shape != (dim, dim):
        raise errors.DimensionMismatch(f"{p} needs a {dim}x{dim} state, got {rho.shape}")

    n = p.n_qubits
    columns = basis_indices(n)
    flipped = columns ^ np.uint64(index_mask(p.x_bits, n))
    signs = 1 - 2 * parity(columns & np.uint64(index_mask(p.z_bits, n)))

    phase = _PHASE_VALUES[(p.phase_exp + popcount(p.y_bits)) % 4]
    return complex(phase * np.sum(signs * rho[columns.astype(np.int64), flipped.astype(np.int64)]))
