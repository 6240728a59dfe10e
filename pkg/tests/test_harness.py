import math
from typing import List

import pytest

import idbench
from idbench import SweepPoint, SweepRow, SweepSpec

GRID_SPEC = """
# a coarse version of the benchmark figure grid
n_list = 3
t1_range = 5, 50
t2_range = 1, 19
w_range = 0.05, 0.5
pe_value = 0, 0.02
points_per_axis = 3
"""


@pytest.fixture(scope="module")
def grid_rows() -> List[SweepRow]:
    return idbench.run_sweep(SweepSpec.parse_text(GRID_SPEC))


def parse_report(text: str) -> List[List[float]]:
    lines = text.splitlines()
    return [[float(v) for v in line.split()] for line in lines[1:]]


def test_ideal_sweep():
    rows = idbench.run_sweep(SweepSpec(n_list=(3,)))
    assert len(rows) == 1
    assert abs(rows[0].b_score - 1) < 1e-9
    assert rows[0].t1_source == "inf"
    assert rows[0].m == 4


def test_grid_size(grid_rows: List[SweepRow]):
    assert len(grid_rows) == SweepSpec.parse_text(GRID_SPEC).grid_size == 54


def test_grid_order(grid_rows: List[SweepRow]):
    keys = [(float(r.t1_source), r.t2_us, r.w_rad, float(r.pe_source)) for r in grid_rows]
    assert keys == sorted(keys)


def test_fidelity_bound_holds(grid_rows: List[SweepRow]):
    assert all(row.f_id <= row.f_true + 1e-9 for row in grid_rows)


def test_chip_sweep():
    spec = SweepSpec(n_list=(3, 4, 5), t1_preset="chip", pe_preset="chip", t2_us=(10.0,), w_rad=(0.275,))
    rows = idbench.run_sweep(spec)
    assert [row.n for row in rows] == [3, 4, 5]
    assert all(row.b_score > 0 for row in rows)
    assert all(row.t1_source == row.pe_source == "chip" for row in rows)


@pytest.mark.slow
def test_chip_sweep_all_sizes():
    spec = SweepSpec(n_list=tuple(range(3, 10)), t1_preset="chip", pe_preset="chip", t2_us=(10.0,), w_rad=(0.275,))
    assert all(row.b_score > 0 for row in idbench.run_sweep(spec))


def test_mixed_preset_axis():
    spec = SweepSpec.parse_text("n_list = 3\nt2_value = 10\nw_value = 0.275\npe_value = 0, 0.02, chip\n")
    rows = idbench.run_sweep(spec)
    assert [row.pe_source for row in rows] == ["0.0", "0.02", "chip"]
    assert rows[0].f_true > rows[1].f_true > rows[2].f_true
    assert all(row.f_id <= row.f_true + 1e-9 for row in rows)


BOUND_SPEC = """
n_list = 3
t1_range = 5, 50
t2_range = 1, 19
w_range = 0.05, 0.5
pe_value = 0, 0.02, chip
points_per_axis = 7
"""


@pytest.mark.slow
def test_fidelity_bound_holds_on_full_grid():
    spec = SweepSpec.parse_text(BOUND_SPEC)
    rows = idbench.run_sweep(spec)
    assert len(rows) == spec.grid_size >= 1000
    assert all(row.f_id <= row.f_true + 1e-9 for row in rows)

    gaps = [row.f_true - row.f_id for row in rows if row.pe_source == "0.0" and row.f_true > 0.99]
    assert max(gaps, default=0.0) < 0.02


def test_bound_is_tight_near_unit_fidelity():
    rows = idbench.run_sweep(SweepSpec(n_list=(3, 4, 5), w_rad=(0.05, 0.1)))
    assert all(row.f_true > 0.99 for row in rows)
    assert all(-1e-9 <= row.f_true - row.f_id < 0.02 for row in rows)


@pytest.mark.slow
def test_chip_median_score_declines_with_n():
    spec = SweepSpec(
        n_list=tuple(range(3, 10)),
        t1_preset="chip",
        pe_preset="chip",
        t2_us=(1.0, 5.5, 10.0, 14.5, 19.0),
        w_rad=(0.05, 0.1625, 0.275, 0.3875, 0.5),
    )
    rows = idbench.run_sweep(spec)
    assert all(row.b_score > 0 for row in rows if row.t2_us == 10.0 and row.w_rad == 0.275)

    medians = [line[1] for line in parse_report(idbench.report(rows, "b_vs_n"))]
    inversions = sum(later > earlier for earlier, later in zip(medians, medians[1:]))
    # the spread of chip T1 and init errors allows two inversions
    assert inversions <= 2
    assert medians[0] > medians[-1]


def test_preset_uses_last_qubits():
    point = SweepPoint(index=(0, 0, 0, 0, 0), n_qubits=3, t1="chip", t2_us=10.0, w_rad=0.1, pe="chip")
    noise = idbench.noise_for_point(point)
    assert noise.t1_per_qubit == pytest.approx((39.2e-6, 24.7e-6, 26.3e-6))
    assert noise.init_error == pytest.approx((0.067, 0.004, 0.015))
    assert noise.t2 == pytest.approx(10e-6)


def test_uniform_point():
    point = SweepPoint(index=(0, 0, 0, 0, 0), n_qubits=2, t1=20.0, t2_us=math.inf, w_rad=0.0, pe=0.02)
    noise = idbench.noise_for_point(point)
    assert noise.t1_per_qubit == pytest.approx((20e-6, 20e-6))
    assert math.isinf(noise.t2)
    assert noise.init_error == (0.02, 0.02)


def test_missing_catalog_entry():
    with pytest.raises(idbench.MissingCatalogEntry):
        idbench.run_sweep(SweepSpec(n_list=(2,)))


def test_custom_catalog(cluster3_id: idbench.IdTable):
    rows = idbench.run_sweep(SweepSpec(n_list=(3,), pe=(0.01,)), catalog={3: cluster3_id})
    assert rows[0].row_expectations[0] < 0


def test_sweep_is_deterministic():
    spec = SweepSpec.parse_text(GRID_SPEC.replace("points_per_axis = 3", "points_per_axis = 2"))
    assert idbench.dumps_csv(idbench.run_sweep(spec)) == idbench.dumps_csv(idbench.run_sweep(spec))


def test_sweep_workers():
    spec = SweepSpec(n_list=(3, 4), t2_us=(5.0, 15.0), w_rad=(0.1, 0.3))
    parallel = spec.copy(update={"workers": 2})
    assert idbench.dumps_csv(idbench.run_sweep(parallel)) == idbench.dumps_csv(idbench.run_sweep(spec))


def test_shots_sweep_is_reproducible():
    spec = SweepSpec(n_list=(3,), t2_us=(5.0,), mode="shots", shots=500, seed=3)
    assert idbench.run_sweep(spec) == idbench.run_sweep(spec)


def test_csv_columns():
    rows = idbench.run_sweep(SweepSpec(n_list=(3, 4)))
    header, first, second = idbench.dumps_csv(rows).splitlines()
    assert header.split(",") == [*idbench.CSV_COLUMNS, "o_1", "o_2", "o_3", "o_4", "o_5"]
    assert first.endswith(",")
    assert not second.endswith(",")


def test_csv_roundtrip(tmp_path):
    rows = idbench.run_sweep(SweepSpec(n_list=(3, 4), pe=(0.0, 0.02)))
    path = str(tmp_path / "sweep.csv")
    idbench.write_csv(path, rows)
    assert idbench.read_csv(path) == rows


def test_csv_missing_columns():
    with pytest.raises(idbench.InputError):
        idbench.loads_csv("n,m\n3,4\n")


def test_report_b_vs_n():
    rows = idbench.run_sweep(SweepSpec(n_list=(3, 4, 5)))
    text = idbench.report(rows, "b_vs_n")
    assert text.splitlines()[0] == "n b_median b_min b_max"

    data = parse_report(text)
    assert [line[0] for line in data] == [3, 4, 5]
    assert all(abs(v - 1) < 1e-9 for line in data for v in line[1:])


def test_report_b_vs_t2(grid_rows: List[SweepRow]):
    data = parse_report(idbench.report(grid_rows, "b_vs_t2"))
    assert [line[1] for line in data] == [1.0, 10.0, 19.0]
    scores = [line[2] for line in data]
    assert scores == sorted(scores)


def test_report_b_vs_w(grid_rows: List[SweepRow]):
    data = parse_report(idbench.report(grid_rows, "b_vs_w"))
    assert [line[1] for line in data] == pytest.approx([0.05, 0.275, 0.5])
    scores = [line[2] for line in data]
    assert scores == sorted(scores, reverse=True)


def test_report_b_vs_t1(grid_rows: List[SweepRow]):
    data = parse_report(idbench.report(grid_rows, "b_vs_t1"))
    assert [line[1] for line in data] == [5.0, 27.5, 50.0]


def test_report_fid_scatter(grid_rows: List[SweepRow]):
    data = parse_report(idbench.report(grid_rows, "fid_scatter"))
    assert len(data) == len(grid_rows)
    assert all(f_id <= f_true + 1e-9 for f_true, f_id in data)


def test_report_preset_axis():
    rows = idbench.run_sweep(SweepSpec(n_list=(3,), t1_preset="chip"))
    with pytest.raises(idbench.InputError):
        idbench.report(rows, "b_vs_t1")


def test_report_errors(grid_rows: List[SweepRow]):
    with pytest.raises(idbench.InputError):
        idbench.report(grid_rows, "b_vs_n_qubits")
    with pytest.raises(idbench.InputError):
        idbench.report([], "fid_scatter")


def test_write_report(tmp_path, grid_rows: List[SweepRow]):
    path = tmp_path / "scatter.dat"
    idbench.write_report(str(path), grid_rows, "fid_scatter")
    assert path.read_text().startswith("f_true f_id\n")
