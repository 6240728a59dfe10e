import functools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import idbench
from idbench import PauliString, commutes, from_letters, multiply, to_matrix
from idbench import pauli as pauli_module


def pauli_strings(n_qubits: int):
    letters = st.text(alphabet="IXYZ", min_size=n_qubits, max_size=n_qubits)
    return st.builds(lambda l, phase: from_letters(l).with_phase(phase), letters, st.integers(0, 3))


pauli_pairs = st.integers(1, 4).flatmap(lambda n: st.tuples(pauli_strings(n), pauli_strings(n)))
pauli_triples = st.integers(1, 3).flatmap(lambda n: st.tuples(pauli_strings(n), pauli_strings(n), pauli_strings(n)))


@pytest.mark.parametrize("letters", ["YXY", "III", "ZXZ", "XIZYI"])
def test_letters_roundtrip(letters: str):
    p = from_letters(letters)
    assert p.to_letters() == letters
    assert p.phase_exp == 0


def test_identity_bits():
    p = from_letters("III")
    assert p.x_bits == p.z_bits == 0
    assert p.is_identity


def test_y_bits():
    p = from_letters("YXY")
    assert p.x_bits == 0b111
    assert p.z_bits == 0b101
    assert p.y_bits == 0b101


@pytest.mark.parametrize("letters", ["", "XQ", "AB"])
def test_invalid_letters(letters: str):
    with pytest.raises(idbench.InvalidPauliString):
        from_letters(letters)


@pytest.mark.parametrize("text,phase,letters", [("-YXY", 2, "YXY"), ("+iXZ", 1, "XZ"), ("-iZ", 3, "Z"), ("ZZ", 0, "ZZ")])
def test_parse(text: str, phase: int, letters: str):
    p = PauliString.parse(text)
    assert p.phase_exp == phase
    assert p.to_letters() == letters
    assert PauliString.parse(str(p)) == p


@pytest.mark.parametrize(
    "p,q,expected",
    [
        ("X", "Y", "+iZ"),
        ("Y", "X", "-iZ"),
        ("YXY", "YXY", "+III"),
        ("XZ", "ZX", "+YY"),
    ],
)
def test_multiply(p: str, q: str, expected: str):
    assert str(multiply(PauliString.parse(p), PauliString.parse(q))) == expected


def test_three_qubit_id_product():
    rows = [from_letters(l) for l in ("YXY", "YYZ", "ZXZ", "ZYY")]
    assert str(idbench.product(rows)) == "-III"


def test_multiply_mismatch():
    with pytest.raises(idbench.QubitMismatch):
        multiply(from_letters("XX"), from_letters("X"))


@pytest.mark.parametrize("p,q,result", [("XX", "ZZ", True), ("X", "Z", False), ("YXY", "ZXZ", True)])
def test_commutes(p: str, q: str, result: bool):
    assert commutes(from_letters(p), from_letters(q)) is result


def test_matrices():
    assert np.array_equal(to_matrix(from_letters("Z")), np.diag([1, -1]))
    assert np.array_equal(to_matrix(from_letters("XX")), np.fliplr(np.eye(4)))


def test_matrix_is_read_only():
    m = to_matrix(from_letters("XY"))
    with pytest.raises(ValueError):
        m[0, 0] = 1


def test_dense_cap():
    with pytest.raises(idbench.DenseCapExceeded):
        to_matrix(from_letters("X" * 5), cap=4)


def test_matrix_cache_is_bounded_in_bytes():
    cache = pauli_module._MATRIX_CACHE
    for element in idbench.cluster_stabilizer_group(8).elements:
        to_matrix(element)

    assert cache.currsize <= cache.maxsize == idbench.DENSE_CACHE_BYTES
    assert cache.currsize == sum(m.nbytes for m in cache.values())
    assert len(cache) < 256


@given(pauli_pairs)
@settings(max_examples=100, deadline=None)
def test_multiply_matches_matrices(pair):
    p, q = pair
    assert np.allclose(to_matrix(multiply(p, q)), to_matrix(p) @ to_matrix(q))


@given(pauli_pairs)
@settings(max_examples=100, deadline=None)
def test_commutes_matches_matrices(pair):
    p, q = pair
    a, b = to_matrix(p), to_matrix(q)
    assert commutes(p, q) == np.allclose(a @ b, b @ a)


@given(pauli_triples)
@settings(max_examples=50, deadline=None)
def test_associative(triple):
    p, q, r = triple
    assert multiply(multiply(p, q), r) == multiply(p, multiply(q, r))


@given(pauli_pairs)
@settings(max_examples=50, deadline=None)
def test_involution(pair):
    p, q = pair
    square = multiply(p, p)
    assert square.is_identity
    assert multiply(p, multiply(p, q)).unsigned() == q.unsigned()


@given(st.integers(1, 3).flatmap(pauli_strings))
@settings(max_examples=50, deadline=None)
def test_hermitian_matrices(p: PauliString):
    m = to_matrix(p)
    assert np.allclose(m, m.conj().T) == p.is_hermitian


@given(st.integers(1, 3).flatmap(pauli_strings))
@settings(max_examples=50, deadline=None)
def test_reversed(p: PauliString):
    assert p.reversed().to_letters() == p.to_letters()[::-1]
    assert p.reversed().reversed() == p


def test_expectation_matches_trace(random_state):
    rho = random_state(3)
    for letters in ("XYZ", "YXY", "IZI", "ZZX"):
        for sign in ("", "-"):
            p = PauliString.parse(sign + letters)
            expected = np.trace(rho.data @ to_matrix(p))
            value = idbench.expectation_value(p, rho.data)
            assert abs(value - expected) < 1e-12
            assert abs(value.imag) < 1e-10


def test_expectation_dimension():
    with pytest.raises(idbench.DimensionMismatch):
        idbench.expectation_value(from_letters("XX"), np.eye(2) / 2)


def test_sorting():
    strings = [from_letters(l) for l in ("ZX", "XZ", "YY")]
    assert [p.to_letters() for p in sorted(strings)] == ["XZ", "YY", "ZX"]
    assert functools.reduce(lambda a, b: a | b.support, strings, 0) == 0b11
