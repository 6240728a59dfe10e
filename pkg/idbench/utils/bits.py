"""Bit tricks shared by the algebra, search and simulator"""
from typing import Iterator

import numpy as np

__all__ = ["popcount", "iter_bits", "index_mask", "parity", "basis_indices"]


def popcount(x: int) -> int:
    """Number of set bits of a non-negative integer"""
    return bin(x).count("1")


def iter_bits(x: int) -> Iterator[int]:
    """Positions of the set bits, lowest first"""
    position = 0
    while x:
        if x & 1:
            yield position
        x >>= 1
        position += 1


def index_mask(mask: int, n_qubits: int) -> int:
    """Convert a qubit mask (bit j = qubit j) to a basis-index mask

    Basis indices follow the kronecker convention, qubit 0 is the most significant bit.

    :param mask: A mask over qubits
    :param n_qubits: The number of qubits
    """
    return sum(1 << (n_qubits - 1 - j) for j in iter_bits(mask))


def parity(values: np.ndarray) -> np.ndarray:
    """Elementwise parity of the set bits of an integer array"""
    values = values.astype(np.uint64, copy=True)
    shift = 32
    while shift:
        values ^= values >> np.uint64(shift)
        shift //= 2

    return (values & np.uint64(1)).astype(np.int64)


def basis_indices(n_qubits: int) -> np.ndarray:
    """All computational basis indices of an n-qubit register"""
    return np.arange(2**n_qubits, dtype=np.uint64)
