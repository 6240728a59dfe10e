"""Errors raised by idbench"""
from typing import Dict, Optional, Tuple, Type

__all__ = [
    "IdBenchException",
    # input:
    "InputError",
    "InvalidPauliString",
    "QubitMismatch",
    "TopologyError",
    "DimensionMismatch",
    "NotGHZParity",
    # ids:
    "InvalidID",
    "NonCommutingRows",
    "ImaginaryProduct",
    "ProductNotIdentity",
    "IdleQubit",
    "EigenvalueMismatch",
    # files:
    "CatalogFormatError",
    "MissingCatalogEntry",
    "InvalidSweepSpec",
    # resources:
    "ResourceError",
    "DenseCapExceeded",
    "EnumerationCapExceeded",
    # misc:
    "EXIT_CODES",
    "exit_code_for",
]


class IdBenchException(Exception):
    """A base idbench exception"""

    msg: str = ""

    def __init__(self, msg: Optional[str] = None) -> None:
        self.msg = msg or self.msg
        super().__init__(self.msg)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.msg!r})"


class InputError(IdBenchException):
    """Base error for malformed or out-of-range input"""

    msg = "Invalid input."


class InvalidPauliString(InputError):
    """A pauli string could not be parsed"""

    msg = "Pauli strings need at least one letter from IXYZ."


class QubitMismatch(InputError):
    """Operands act on a different number of qubits"""

    msg = "Operands act on a different number of qubits."


class TopologyError(InputError):
    """A two-qubit gate was requested on non-adjacent qubits"""

    msg = "Two-qubit gates only act on neighbouring qubits of a linear array."


class DimensionMismatch(InputError):
    """A state does not have the dimension an operator needs"""

    msg = "State dimension does not match the operator."


class NotGHZParity(InputError):
    """The ID does not satisfy the GHZ parity condition"""

    msg = "ID has to have sign -1 and even letter counts in every column."


class InvalidID(InputError):
    """Base error for tables which are not identity products"""

    msg = "Table is not a valid ID."


class NonCommutingRows(InvalidID):
    """Two rows of the table anticommute"""

    msg = "Rows of the ID do not mutually commute."


class ImaginaryProduct(InvalidID):
    """The rows multiply to ±i times the identity"""

    msg = "Product of the rows carries an imaginary phase."


class ProductNotIdentity(InvalidID):
    """The rows do not multiply to a multiple of the identity"""

    msg = "Product of the rows is not proportional to the identity."


class IdleQubit(InvalidID):
    """A column of the table only contains I"""

    msg = "Every qubit has to take part in at least one row."


class EigenvalueMismatch(InvalidID):
    """The eigenvalues multiply to the wrong sign"""

    msg = "Product of the eigenvalues does not match the ID sign."


class CatalogFormatError(InputError):
    """A catalog file could not be parsed"""

    msg = "Malformed catalog file."


class MissingCatalogEntry(InputError):
    """No catalog ID exists for a qubit count"""

    msg = "Catalog has no ID for this qubit count."


class InvalidSweepSpec(InputError):
    """A sweep specification could not be parsed"""

    msg = "Malformed sweep specification."


class ResourceError(IdBenchException):
    """Base error for work that exceeds a configured cap"""

    msg = "Configured resource cap exceeded."


class DenseCapExceeded(ResourceError):
    """A dense matrix would be too large"""

    msg = "Too many qubits for a dense matrix."


class EnumerationCapExceeded(ResourceError):
    """An exhaustive enumeration would be too large"""

    msg = "Too many configurations to enumerate."


_TIE = Type[IdBenchException]
EXIT_CODES: Dict[_TIE, int] = {
    InputError: 1,
    ResourceError: 2,
}


def exit_code_for(exc: BaseException) -> int:
    """Get the cli exit code of an exception

    input errors exit with 1, resource errors with 2, anything else with 1

    :param exc: A raised exception
    """
    for exctype, code in EXIT_CODES.items():
        if isinstance(exc, exctype):
            return code

    return 1

