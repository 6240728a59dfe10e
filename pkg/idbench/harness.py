"""Parameter sweeps over noise grids, csv tables and plot data"""
from __future__ import annotations

import asyncio
import csv
import functools
import io
import logging
import math
import statistics
from concurrent.futures import Executor, ProcessPoolExecutor
from typing import Callable, Dict, List, Literal, Mapping, Optional, Sequence, Tuple, TypeVar

from . import errors
from .models import ChipPreset, IdTable, NoiseParams, SweepPoint, SweepRow, SweepSpec
from .search import CATALOG_QUBITS, catalog_entry
from .simulator import run_benchmark

__all__ = [
    "CSV_COLUMNS",
    "REPORT_KINDS",
    "ReportKind",
    "noise_for_point",
    "run_point",
    "run_sweep",
    "run_sweep_async",
    "dumps_csv",
    "loads_csv",
    "write_csv",
    "read_csv",
    "report",
    "write_report",
]

logger = logging.getLogger(__name__)

T = TypeVar("T")

CSV_COLUMNS = ("n", "m", "t2_us", "w_rad", "t1_source", "pe_source", "alpha", "b_score", "f_id", "f_true")

ReportKind = Literal["b_vs_n", "b_vs_t2", "b_vs_t1", "b_vs_w", "fid_scatter"]
REPORT_KINDS: Tuple[str, ...] = ("b_vs_n", "b_vs_t2", "b_vs_t1", "b_vs_w", "fid_scatter")

_US = 1e-6


def noise_for_point(point: SweepPoint) -> NoiseParams:
    """Noise parameters of a grid point, presets use the last N chip qubits

    :raises InvalidSweepSpec: A preset has fewer qubits than the point needs
    """
    n = point.n_qubits
    try:
        if isinstance(point.t1, str):
            t1 = ChipPreset.get(point.t1).last(n)[0]
        else:
            t1 = (point.t1 * _US,) * n
        if isinstance(point.pe, str):
            pe = ChipPreset.get(point.pe).last(n)[1]
        else:
            pe = (float(point.pe),) * n

        return NoiseParams(t1_per_qubit=t1, t2=point.t2_us * _US, jitter_width=point.w_rad, init_error=pe)
    except ValueError as e:
        raise errors.InvalidSweepSpec(f"Grid point {point.index}: {e}") from e


def run_point(point: SweepPoint, table: IdTable, spec: SweepSpec, seed: Optional[int] = None) -> SweepRow:
    """Benchmark one grid point

    Errors are re-raised with the grid point in their message.
    """
    try:
        result = run_benchmark(table, noise_for_point(point), spec.mode, shots=spec.shots, seed=seed)
    except errors.IdBenchException as e:
        if str(point.index) in e.msg:
            raise
        raise type(e)(f"Grid point {point.index} (N={point.n_qubits}): {e.msg}") from e

    return SweepRow(
        n=point.n_qubits,
        m=table.n_rows,
        t2_us=point.t2_us,
        w_rad=point.w_rad,
        t1_source=point.t1_source,
        pe_source=point.pe_source,
        alpha=result.alpha,
        b_score=result.score,
        f_id=result.fid_bound,
        f_true=result.true_fidelity,
        row_expectations=result.row_expectations,
    )


def _resolve_catalog(spec: SweepSpec, catalog: Optional[Mapping[int, IdTable]]) -> Dict[int, IdTable]:
    if catalog is None:
        catalog = {n: catalog_entry(n) for n in set(spec.n_list) if n in CATALOG_QUBITS}

    missing = [n for n in spec.n_list if n not in catalog]
    if missing:
        raise errors.MissingCatalogEntry(f"The catalog has no ID for N={', '.join(map(str, missing))}")
    return dict(catalog)


async def _gather(executor: Optional[Executor], calls: Sequence[Callable[[], T]]) -> List[T]:
    loop = asyncio.get_running_loop()
    return await asyncio.gather(*(loop.run_in_executor(executor, call) for call in calls))


async def run_sweep_async(spec: SweepSpec, catalog: Optional[Mapping[int, IdTable]] = None) -> List[SweepRow]:
    """Benchmark every grid point of a sweep

    Points are dispatched to a process pool of spec.workers processes. Rows come back
    in grid order whatever the completion order.

    :param spec: The sweep
    :param catalog: IDs by qubit count, the builtin catalog by default
    :raises MissingCatalogEntry: The catalog misses a requested N
    """
    tables = _resolve_catalog(spec, catalog)
    points = spec.points()
    logger.info("Sweeping %d grid points with %d workers", len(points), spec.workers)

    # row i of point k samples with seed + k * 100 + i
    calls = [
        functools.partial(run_point, point, tables[point.n_qubits], spec, spec.seed + 100 * k)
        for k, point in enumerate(points)
    ]
    if spec.workers == 1:
        return [call() for call in calls]

    with ProcessPoolExecutor(spec.workers) as executor:
        return await _gather(executor, calls)


def run_sweep(spec: SweepSpec, catalog: Optional[Mapping[int, IdTable]] = None) -> List[SweepRow]:
    """Synchronous :func:`run_sweep_async`"""
    return asyncio.run(run_sweep_async(spec, catalog))


def _format(value: float) -> str:
    return repr(float(value))


def dumps_csv(rows: Sequence[SweepRow]) -> str:
    """Serialize sweep rows, per-row expectations are padded to the largest M"""
    width = max((len(row.row_expectations) for row in rows), default=0)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS + tuple(f"o_{i}" for i in range(1, width + 1)))

    for row in rows:
        expectations = [_format(e) for e in row.row_expectations]
        expectations += [""] * (width - len(expectations))
        writer.writerow(
            [
                row.n,
                row.m,
                _format(row.t2_us),
                _format(row.w_rad),
                row.t1_source,
                row.pe_source,
                _format(row.alpha),
                _format(row.b_score),
                _format(row.f_id),
                _format(row.f_true),
                *expectations,
            ]
        )

    return buffer.getvalue()


def loads_csv(text: str) -> List[SweepRow]:
    """Parse a table written by :func:`dumps_csv`

    :raises InputError: Required columns are missing
    """
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or set(CSV_COLUMNS) - set(reader.fieldnames):
        raise errors.InputError(f"Sweep tables need the columns {', '.join(CSV_COLUMNS)}")

    rows = []
    for record in reader:
        expectations = [float(record[f"o_{i}"]) for i in range(1, int(record["m"]) + 1)]
        rows.append(
            SweepRow(
                n=int(record["n"]),
                m=int(record["m"]),
                t2_us=float(record["t2_us"]),
                w_rad=float(record["w_rad"]),
                t1_source=record["t1_source"],
                pe_source=record["pe_source"],
                alpha=float(record["alpha"]),
                b_score=float(record["b_score"]),
                f_id=float(record["f_id"]),
                f_true=float(record["f_true"]),
                row_expectations=expectations,
            )
        )

    return rows


def write_csv(path: str, rows: Sequence[SweepRow]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as file:
        file.write(dumps_csv(rows))


def read_csv(path: str) -> List[SweepRow]:
    with open(path, encoding="utf-8") as file:
        return loads_csv(file.read())


def _axis_key(value: str) -> Tuple[int, float, str]:
    try:
        return (0, float(value), "")
    except ValueError:
        return (1, math.nan, value)


def _middle(values: Sequence[str]) -> str:
    """Median value of an axis, the lower one for an even number of values"""
    ordered = sorted(set(values), key=_axis_key)
    return ordered[(len(ordered) - 1) // 2]


_AXES: Dict[str, Callable[[SweepRow], str]] = {
    "t1": lambda row: row.t1_source,
    "t2": lambda row: _format(row.t2_us),
    "w": lambda row: _format(row.w_rad),
    "pe": lambda row: row.pe_source,
}


def _b_vs_axis(rows: Sequence[SweepRow], axis: str) -> List[Tuple[object, ...]]:
    others = [name for name in _AXES if name != axis]
    lines: List[Tuple[object, ...]] = []
    for n in sorted({row.n for row in rows}):
        selected = [row for row in rows if row.n == n]
        for name in others:
            middle = _middle([_AXES[name](row) for row in selected])
            selected = [row for row in selected if _AXES[name](row) == middle]

        for row in sorted(selected, key=lambda row: _axis_key(_AXES[axis](row))):
            x = _AXES[axis](row)
            if _axis_key(x)[0]:
                raise errors.InputError(f"{axis} is a preset axis, it has no numeric values to plot")
            lines.append((n, float(x), row.b_score))

    return lines


def _b_vs_n(rows: Sequence[SweepRow]) -> List[Tuple[object, ...]]:
    lines: List[Tuple[object, ...]] = []
    for n in sorted({row.n for row in rows}):
        scores = [row.b_score for row in rows if row.n == n]
        lines.append((n, statistics.median(scores), min(scores), max(scores)))
    return lines


_HEADERS = {
    "b_vs_n": "n b_median b_min b_max",
    "b_vs_t2": "n t2_us b",
    "b_vs_t1": "n t1_us b",
    "b_vs_w": "n w_rad b",
    "fid_scatter": "f_true f_id",
}


def report(rows: Sequence[SweepRow], kind: str) -> str:
    """Whitespace-delimited plot data with a one-line header

    b_vs_n gives the median, minimum and maximum score per N. The b_vs_* axis
    reports fix every other axis at its median grid value.

    :param rows: Sweep rows
    :param kind: One of REPORT_KINDS
    :raises InputError: Unknown kind or nothing to report
    """
    if kind not in REPORT_KINDS:
        raise errors.InputError(f"Unknown report kind {kind!r}, expected one of {', '.join(REPORT_KINDS)}")

    if kind == "b_vs_n":
        lines = _b_vs_n(rows)
    elif kind == "fid_scatter":
        lines = [(row.f_true, row.f_id) for row in rows]
    else:
        lines = _b_vs_axis(rows, kind[len("b_vs_") :])

    if not lines:
        raise errors.InputError(f"Nothing to report for {kind}, the selection is empty")

    body = (" ".join(str(v) if isinstance(v, int) else _format(v) for v in line) for line in lines)
    return "\n".join([_HEADERS[kind], *body]) + "\n"


def write_report(path: str, rows: Sequence[SweepRow], kind: str) -> None:
    with open(path, "w", encoding="utf-8") as file:
        file.write(report(rows, kind))
