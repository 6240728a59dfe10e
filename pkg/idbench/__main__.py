"""A cli for idbench"""
import math
import sys
from typing import List, Optional

import click
import typer

import idbench
from idbench import errors

app = typer.Typer(name="idbench")


@app.callback()
def callback(debug: bool = typer.Option(False, help="Show debug logs")):
    """Nonclassicality benchmarks from identity products"""
    idbench.set_debug(debug)


def _load(catalog: Optional[str]) -> List[idbench.IdTable]:
    if catalog is None:
        return list(idbench.builtin_catalog().values())
    return idbench.read_catalog(catalog)


@app.command()
def validate(
    catalog: Optional[str] = typer.Argument(None, help="A catalog file, the builtin catalog by default"),
):
    """Check every ID of a catalog"""
    tables = _load(catalog)
    failed = 0
    for table in tables:
        header = typer.style(f"N={table.n_qubits} M={table.n_rows}", bold=True)
        failures = idbench.validate_id(table).failures
        if not failures:
            if not idbench.ghz_parity_check(table):
                failures.append("GHZ parity condition is not satisfied")
            elif not idbench.is_maximally_entangled(table):
                failures.append("a bipartition leaves the ID separable")

        if failures:
            failed += 1
            typer.echo(f"{header} {typer.style('FAIL', fg='red')}: {'; '.join(failures)}")
        else:
            typer.echo(f"{header} {typer.style('OK', fg='green')}")

    if failed:
        raise errors.InvalidID(f"{failed} of {len(tables)} IDs failed validation")


@app.command()
def search(
    n: int = typer.Option(..., help="The number of qubits"),
    m: Optional[int] = typer.Option(None, help="The number of rows, the minimal one by default"),
    ghz: bool = typer.Option(True, help="Require the GHZ parity condition"),
    maxent: bool = typer.Option(True, help="Require maximal entanglement"),
    limit: Optional[int] = typer.Option(None, help="The maximum amount of IDs to find"),
    workers: int = typer.Option(1, help="The number of search processes"),
    out: Optional[str] = typer.Option(None, help="Write the IDs to a catalog file"),
):
    """Search IDs in the cluster-state stabilizer group"""
    rows = m if m is not None else idbench.minimal_M(n)
    constraints = idbench.SearchConstraints(n_rows=rows, require_ghz=ghz, require_maxent=maxent, limit=limit)
    tables = idbench.search_ids(n, constraints, workers=workers)

    if out is not None:
        idbench.write_catalog(out, tables)
        typer.echo(f"Wrote {len(tables)} IDs to {out}")
    elif tables:
        typer.echo(idbench.dumps_catalog(tables), nl=False)
    else:
        typer.secho(f"No IDs found for N={n} M={rows}", fg="yellow")


@app.command()
def run(
    n: int = typer.Option(..., help="The number of qubits"),
    preset: Optional[str] = typer.Option(None, help="Use the T1 and init errors of a chip preset"),
    t1: Optional[float] = typer.Option(None, help="T1 of every qubit in µs, infinite by default"),
    t2: Optional[float] = typer.Option(None, help="T2 in µs"),
    w: Optional[float] = typer.Option(None, help="The CZ jitter width in radians"),
    pe: Optional[float] = typer.Option(None, help="The init error probability of every qubit, 0 by default"),
    ideal: bool = typer.Option(False, "--ideal", help="Simulate without any noise"),
    mode: str = typer.Option("exact", help="exact or shots"),
    shots: int = typer.Option(10000, help="Samples per setting in shots mode"),
    seed: Optional[int] = typer.Option(None, help="The seed of shots mode"),
):
    """Benchmark the builtin ID of N qubits"""
    uniform = [flag for flag, value in (("--t1", t1), ("--pe", pe)) if value is not None]
    if ideal and preset is not None:
        raise click.UsageError("--ideal and --preset cannot be combined")
    if ideal and (uniform or t2 is not None or w is not None):
        raise click.UsageError("--ideal takes no noise options")
    if preset is not None and uniform:
        raise click.UsageError(f"{' and '.join(uniform)} cannot be combined with --preset, it sets T1 and init errors")
    if mode not in ("exact", "shots"):
        raise click.UsageError(f"Unknown mode {mode!r}")

    try:
        if ideal:
            noise = idbench.NoiseParams.ideal(n)
        elif preset is not None:
            noise = idbench.NoiseParams.from_preset(
                n,
                preset,
                t2=(idbench.MEDIAN_T2_US if t2 is None else t2) * 1e-6,
                jitter_width=idbench.MEDIAN_W if w is None else w,
            )
        else:
            noise = idbench.NoiseParams.uniform(
                n,
                t1=(math.inf if t1 is None else t1) * 1e-6,
                t2=(math.inf if t2 is None else t2) * 1e-6,
                jitter_width=0.0 if w is None else w,
                init_error=0.0 if pe is None else pe,
            )
    except ValueError as e:
        raise errors.InputError(str(e)) from e

    table = idbench.catalog_entry(n)
    result = idbench.run_benchmark(table, noise, mode, shots=shots, seed=seed)  # type: ignore

    typer.echo(f"B={result.score:.6f}, F_ID={result.fid_bound:.6f}")
    typer.echo(f"alpha={result.alpha:.6f}, F={result.true_fidelity:.6f}")


@app.command()
def sweep(
    spec: str = typer.Option(..., help="A sweep spec file"),
    out: Optional[str] = typer.Option(None, help="The csv file, stdout by default"),
):
    """Run a parameter sweep and write a csv table"""
    rows = idbench.run_sweep(idbench.SweepSpec.parse_spec_file(spec))
    if out is None:
        typer.echo(idbench.dumps_csv(rows), nl=False)
    else:
        idbench.write_csv(out, rows)
        typer.echo(f"Wrote {len(rows)} rows to {out}")


@app.command()
def report(
    kind: str = typer.Option(..., help=f"One of {', '.join(idbench.REPORT_KINDS)}"),
    csv: str = typer.Option(..., help="A csv table written by sweep"),
    out: Optional[str] = typer.Option(None, help="The plot data file, stdout by default"),
):
    """Turn a sweep table into plot data"""
    rows = idbench.read_csv(csv)
    if out is None:
        typer.echo(idbench.report(rows, kind), nl=False)
    else:
        idbench.write_report(out, rows, kind)


@app.command()
def catalog(
    out: Optional[str] = typer.Option(None, help="The catalog file, stdout by default"),
):
    """Export the builtin catalog"""
    tables = list(idbench.builtin_catalog().values())
    if out is None:
        typer.echo(idbench.dumps_catalog(tables), nl=False)
    else:
        idbench.write_catalog(out, tables)


def main(argv: Optional[List[str]] = None) -> int:
    """Run the cli and translate errors into exit codes

    Usage errors exit with 1, input errors with 1 and resource errors with 2.
    """
    try:
        code = app(args=argv, prog_name="idbench", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return 1
    except click.Abort:
        return 1
    except errors.IdBenchException as e:
        typer.secho(f"Error: {e.msg}", fg="red", err=True)
        return errors.exit_code_for(e)

    return code if isinstance(code, int) else 0


if __name__ == "__main__":
    sys.exit(main())
