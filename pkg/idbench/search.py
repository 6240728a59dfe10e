"""Search of the linear cluster-state stabilizer group for benchmark IDs"""
from __future__ import annotations

import functools
import logging
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterator, List, NamedTuple, Sequence, Tuple

from . import errors
from .benchmark import ghz_parity_check, is_maximally_entangled, require_valid
from .constants import GROUP_QUBIT_CAP
from .models import IdTable, SearchConstraints
from .pauli import PauliString, anticommuting_sites
from .utils.bits import popcount
from .utils.catalog import read_catalog

__all__ = [
    "ClusterGroup",
    "cluster_element",
    "cluster_stabilizer_group",
    "minimal_M",
    "search_ids",
    "builtin_catalog",
    "catalog_entry",
    "derive_catalog_entry",
    "CATALOG_QUBITS",
    "CATALOG_FILE",
]

logger = logging.getLogger(__name__)

CATALOG_QUBITS = range(3, 10)

CATALOG_FILE = os.path.join(os.path.dirname(__file__), "data", "builtin.catalog")

_THREE_QUBIT_ID = IdTable(letters=["YXY", "YYZ", "ZXZ", "ZYY"], eigenvalues=[-1, 1, 1, 1], sign=-1)


class ClusterGroup(NamedTuple):
    """All 2^N stabilizers of the linear cluster state, element S is ∏_{j∈S} K_j"""

    n_qubits: int
    elements: Tuple[PauliString, ...]  # signed, indexed by generator subset

    def __contains__(self, item: object) -> bool:
        return item in self.elements


def cluster_element(n_qubits: int, subset: int) -> PauliString:
    """The product of the generators K_j = Z_{j-1} X_j Z_{j+1} for j in subset

    Moving every Z right of every X costs one sign per neighbouring pair in the subset,
    and every X·Z on one qubit is -iY.

    :param n_qubits: The length of the chain
    :param subset: Bit mask of the generators, bit j for K_j on qubit j
    """
    full = (1 << n_qubits) - 1
    x_bits = subset
    z_bits = ((subset << 1) ^ (subset >> 1)) & full
    phase = 2 * popcount(subset & (subset >> 1)) - popcount(x_bits & z_bits)
    return PauliString(n_qubits, x_bits, z_bits, phase)


def cluster_stabilizer_group(n_qubits: int, *, cap: int = GROUP_QUBIT_CAP) -> ClusterGroup:
    """Every element of the linear cluster-state stabilizer group with its exact sign

    :param n_qubits: The length of the chain, at least 2
    :param cap: The largest chain to enumerate
    :raises EnumerationCapExceeded: The group has more than 2^cap elements
    """
    if n_qubits < 2:
        raise errors.InputError("A linear cluster state needs at least 2 qubits")
    if n_qubits > cap:
        raise errors.EnumerationCapExceeded(f"A group of 2^{n_qubits} elements exceeds the cap of 2^{cap}")

    elements = tuple(cluster_element(n_qubits, subset) for subset in range(2**n_qubits))
    return ClusterGroup(n_qubits, elements)


def minimal_M(n_qubits: int) -> int:
    """Smallest M with N <= (M-2)(M-1)/2"""
    m = 3
    while (m - 2) * (m - 1) // 2 < n_qubits:
        m += 1
    return m


class _Candidate(NamedTuple):
    subset: int
    string: PauliString
    signature: int


def _candidates(n_qubits: int, require_ghz: bool) -> List[_Candidate]:
    """Non-identity group elements with their xor signature

    The signature packs the generator subset, the Y positions (only when GHZ parity
    is required) and whether the eigenvalue is -1. A set of rows is an ID of sign -1
    with even Y columns exactly when the signatures xor to the eigenvalue bit.
    """
    group = cluster_stabilizer_group(n_qubits)
    n = n_qubits
    candidates = []
    for subset, element in enumerate(group.elements):
        if not subset:
            continue
        signature = subset
        if require_ghz:
            signature |= element.y_bits << n
        signature |= (element.sign < 0) << (2 * n)
        candidates.append(_Candidate(subset, element, signature))

    # heavy rows first, they cover the chain sooner
    candidates.sort(key=lambda c: (-c.string.weight, c.string.to_letters()))
    return candidates


def _pair_table(candidates: Sequence[_Candidate]) -> Dict[int, List[Tuple[int, int]]]:
    table: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
    for a in range(len(candidates)):
        for b in range(a + 1, len(candidates)):
            table[candidates[a].signature ^ candidates[b].signature].append((a, b))
    return table


def _maximally_entangled(rows: Sequence[PauliString], n_qubits: int) -> bool:
    """Rank criterion: the anticommutation masks must span every even subset"""
    basis: Dict[int, int] = {}
    for i in range(len(rows)):
        for k in range(i + 1, len(rows)):
            vector = anticommuting_sites(rows[i], rows[k])
            while vector:
                lead = vector.bit_length() - 1
                if lead not in basis:
                    basis[lead] = vector
                    break
                vector ^= basis[lead]
    return len(basis) == n_qubits - 1


def _combinations(
    candidates: Sequence[_Candidate],
    pairs: Dict[int, List[Tuple[int, int]]],
    size: int,
    target: int,
    first: Sequence[int],
) -> Iterator[Tuple[int, ...]]:
    """Increasing index tuples whose signatures xor to the target

    The first size - 2 indices are enumerated, the final two are looked up.
    """

    def extend(prefix: Tuple[int, ...], acc: int) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == size - 2:
            for a, b in pairs.get(acc ^ target, ()):
                if a > prefix[-1]:
                    yield prefix + (a, b)
            return
        for c in range(prefix[-1] + 1, len(candidates)):
            yield from extend(prefix + (c,), acc ^ candidates[c].signature)

    for start in first:
        yield from extend((start,), candidates[start].signature)


def _search_partition(
    n_qubits: int, constraints: SearchConstraints, part: int, parts: int
) -> List[Tuple[Tuple[int, ...], IdTable]]:
    """IDs of one first-row partition with the index tuple they were first found at

    Index tuples come out in lexicographic order, so with a limit the partition keeps
    its first hits in enumeration order.
    """
    candidates = _candidates(n_qubits, constraints.require_ghz)
    pairs = _pair_table(candidates)
    target = 1 << (2 * n_qubits)
    full = (1 << n_qubits) - 1
    first = range(part, len(candidates), parts)

    found: Dict[Tuple, Tuple[Tuple[int, ...], IdTable]] = {}
    for indices in _combinations(candidates, pairs, constraints.n_rows, target, first):
        rows = [candidates[i].string for i in indices]
        if functools.reduce(lambda a, b: a | b.support, rows, 0) != full:
            continue
        if constraints.require_maxent and not _maximally_entangled(rows, n_qubits):
            continue

        table = IdTable(
            letters=[row.to_letters() for row in rows],
            eigenvalues=[row.sign for row in rows],
            sign=-1,
        )
        if constraints.canonical_dedup:
            table = table.canonical()
        found.setdefault(table.key(), (indices, table))

        if constraints.limit is not None and len(found) >= constraints.limit:
            break

    return list(found.values())


def search_ids(n_qubits: int, constraints: SearchConstraints, *, workers: int = 1) -> List[IdTable]:
    """Find sign -1 IDs made of cluster-group elements

    Eigenvalues are the group signs, so the cluster state lies in every target
    eigenspace. Results are sorted by their rows; with canonical dedup each ID and its
    qubit-reversal are reported once. A limit keeps the first IDs in enumeration order,
    independent of the number of workers.

    :param n_qubits: The length of the chain
    :param constraints: The number of rows and the predicates to enforce
    :param workers: The number of processes sharing the first-row range
    :returns: The found IDs, possibly none
    :raises EnumerationCapExceeded: The group is too large to enumerate
    """
    if constraints.n_rows > n_qubits + 1:
        raise errors.InputError(f"IDs on {n_qubits} qubits have at most {n_qubits + 1} rows")

    logger.debug("Searching N=%d M=%d with %d workers", n_qubits, constraints.n_rows, workers)
    if workers > 1:
        with ProcessPoolExecutor(workers) as executor:
            futures = [
                executor.submit(_search_partition, n_qubits, constraints, part, workers) for part in range(workers)
            ]
            hits = [hit for future in futures for hit in future.result()]
    else:
        hits = _search_partition(n_qubits, constraints, 0, 1)

    # earliest hit of every ID across all partitions
    unique: Dict[Tuple, IdTable] = {}
    for _, table in sorted(hits, key=lambda hit: hit[0]):
        unique.setdefault(table.key(), table)
        if constraints.limit is not None and len(unique) >= constraints.limit:
            break

    results = [unique[key] for key in sorted(unique)]
    logger.debug("Found %d IDs for N=%d M=%d", len(results), n_qubits, constraints.n_rows)
    return results


def derive_catalog_entry(n_qubits: int) -> IdTable:
    """Search the benchmark ID of a qubit count

    The first ID with minimal_M rows is taken. If there is none, M grows one row at a
    time with a warning.

    :raises MissingCatalogEntry: No ID exists up to N+1 rows
    """
    m = minimal_M(n_qubits)
    while m <= n_qubits + 1:
        found = search_ids(n_qubits, SearchConstraints(n_rows=m, limit=1))
        if found:
            return found[0]
        logger.warning("No minimal ID with M=%d found for N=%d, relaxing to M=%d", m, n_qubits, m + 1)
        m += 1

    raise errors.MissingCatalogEntry(f"No benchmark ID found for N={n_qubits}")


@functools.lru_cache(maxsize=None)
def _frozen_catalog() -> Dict[int, IdTable]:
    tables = {3: _THREE_QUBIT_ID}
    for table in read_catalog(CATALOG_FILE):
        if table.n_qubits in tables:
            raise errors.CatalogFormatError(f"{CATALOG_FILE} has two entries for N={table.n_qubits}")
        require_valid(table)
        if not ghz_parity_check(table) or not is_maximally_entangled(table):
            raise errors.CatalogFormatError(f"{CATALOG_FILE} holds a weak benchmark ID: {table}")
        tables[table.n_qubits] = table

    return tables


def catalog_entry(n_qubits: int) -> IdTable:
    """The builtin benchmark ID for a qubit count

    N=3 is the table of the original benchmark proposal, larger N are the committed
    results of derive_catalog_entry.

    :raises MissingCatalogEntry: No entry exists for this qubit count
    """
    catalog = _frozen_catalog()
    if n_qubits not in catalog:
        raise errors.MissingCatalogEntry(f"The builtin catalog covers N=3..9, not N={n_qubits}")

    return catalog[n_qubits]


def builtin_catalog() -> Dict[int, IdTable]:
    """Benchmark IDs for N=3..9"""
    return dict(_frozen_catalog())
