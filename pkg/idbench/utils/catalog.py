"""Reading and writing of the plain-text ID catalog format

A catalog holds one block per ID::

    ID N=3 M=4 sign=-1
    -1 YXY
    +1 YYZ
    +1 ZXZ
    +1 ZYY

Blocks are separated by blank lines.
"""
from __future__ import annotations

import re
from typing import TYPE_CHECKING, Iterable, List

from .. import errors

if TYPE_CHECKING:
    from ..models import IdTable

__all__ = ["dumps_catalog", "loads_catalog", "read_catalog", "write_catalog"]

_HEADER = re.compile(r"ID N=(\d+) M=(\d+) sign=([+-]1)")
_ROW = re.compile(r"([+-]1) ([IXYZ]+)")


def _format_sign(value: int) -> str:
    return "+1" if value > 0 else "-1"


def dumps_catalog(tables: Iterable[IdTable]) -> str:
    """Serialize IDs to the catalog format

    :param tables: The IDs to serialize
    """
    blocks = []
    for table in tables:
        lines = [f"ID N={table.n_qubits} M={table.n_rows} sign={_format_sign(table.sign)}"]
        lines += [f"{_format_sign(l)} {row}" for l, row in zip(table.eigenvalues, table.letters)]
        blocks.append("\n".join(lines) + "\n")

    return "\n".join(blocks)


def loads_catalog(text: str) -> List[IdTable]:
    """Parse IDs from the catalog format

    :param text: Catalog text
    :raises CatalogFormatError: The text is not a valid catalog
    """
    from ..models import IdTable

    tables: List[IdTable] = []
    for number, block in enumerate(re.split(r"\n\s*\n", text.strip()), 1):
        if not block.strip():
            continue

        lines = block.strip().splitlines()
        header = _HEADER.fullmatch(lines[0].strip())
        if header is None:
            raise errors.CatalogFormatError(f"Block {number} has a malformed header: {lines[0]!r}")

        n, m, sign = int(header.group(1)), int(header.group(2)), int(header.group(3))
        if len(lines) - 1 != m:
            raise errors.CatalogFormatError(f"Block {number} declares M={m} but has {len(lines) - 1} rows")

        letters, eigenvalues = [], []
        for line in lines[1:]:
            row = _ROW.fullmatch(line.strip())
            if row is None or len(row.group(2)) != n:
                raise errors.CatalogFormatError(f"Block {number} has a malformed row: {line!r}")
            eigenvalues.append(int(row.group(1)))
            letters.append(row.group(2))

        tables.append(IdTable(letters=letters, eigenvalues=eigenvalues, sign=sign))

    return tables


def read_catalog(path: str) -> List[IdTable]:
    """Read a catalog file

    :param path: A path to a catalog file
    """
    with open(path, encoding="utf-8") as file:
        return loads_catalog(file.read())


def write_catalog(path: str, tables: Iterable[IdTable]) -> None:
    """Write IDs to a catalog file

    :param path: The output path
    :param tables: The IDs to write
    """
    with open(path, "w", encoding="utf-8") as file:
        file.write(dumps_catalog(tables))
