import pytest
from typer.testing import CliRunner

import idbench
from idbench.__main__ import app, main

runner = CliRunner()


def test_run_ideal():
    result = runner.invoke(app, ["run", "--n", "3", "--ideal"])
    assert result.exit_code == 0, result.output
    assert result.output.splitlines()[0] == "B=1.000000, F_ID=1.000000"


def test_run_preset():
    result = runner.invoke(app, ["run", "--n", "3", "--preset", "chip"])
    assert result.exit_code == 0, result.output
    score = float(result.output.split(",")[0].split("=")[1])
    assert score > 0


def test_run_uniform_noise():
    result = runner.invoke(app, ["run", "--n", "3", "--t1", "20", "--t2", "10", "--w", "0.2", "--pe", "0.02"])
    assert result.exit_code == 0, result.output
    assert "alpha=" in result.output


def test_run_preset_rejects_uniform_noise():
    result = runner.invoke(app, ["run", "--n", "3", "--preset", "chip", "--t1", "20"])
    assert result.exit_code != 0
    assert "--t1 cannot be combined with --preset" in result.output


def test_validate_builtin_catalog():
    result = runner.invoke(app, ["validate"])
    assert result.exit_code == 0, result.output
    assert result.output.count("OK") == 7


def test_validate_catalog_file(tmp_path, cluster3_id: idbench.IdTable):
    path = tmp_path / "cluster3.catalog"
    idbench.write_catalog(str(path), [cluster3_id])
    result = runner.invoke(app, ["validate", str(path)])
    assert result.exit_code == 0
    assert "N=3 M=4" in result.output


def test_validate_failure(tmp_path, capsys: pytest.CaptureFixture):
    path = tmp_path / "broken.catalog"
    path.write_text("ID N=2 M=2 sign=-1\n+1 XI\n-1 ZI\n")
    assert main(["validate", str(path)]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_search(tmp_path):
    path = tmp_path / "found.catalog"
    result = runner.invoke(app, ["search", "--n", "4", "--m", "5", "--limit", "2", "--out", str(path)])
    assert result.exit_code == 0, result.output
    tables = idbench.read_catalog(str(path))
    assert 1 <= len(tables) <= 2
    assert all(idbench.ghz_parity_check(t) for t in tables)


def test_search_stdout():
    result = runner.invoke(app, ["search", "--n", "3"])
    assert result.exit_code == 0, result.output
    assert "-1 YXY" in result.output


def test_catalog_export(tmp_path):
    path = tmp_path / "builtin.catalog"
    result = runner.invoke(app, ["catalog", "--out", str(path)])
    assert result.exit_code == 0, result.output
    assert [t.n_qubits for t in idbench.read_catalog(str(path))] == list(range(3, 10))


def test_sweep_and_report(tmp_path):
    spec = tmp_path / "grid.spec"
    spec.write_text("n_list = 3, 4\nt2_value = 5, 15\n")
    csv = tmp_path / "sweep.csv"

    result = runner.invoke(app, ["sweep", "--spec", str(spec), "--out", str(csv)])
    assert result.exit_code == 0, result.output
    assert len(csv.read_text().splitlines()) == 1 + 2 * 2

    result = runner.invoke(app, ["report", "--kind", "b_vs_n", "--csv", str(csv)])
    assert result.exit_code == 0, result.output
    assert result.output.splitlines()[0] == "n b_median b_min b_max"
    assert len(result.output.splitlines()) == 3


def test_main_success(capsys: pytest.CaptureFixture):
    assert main(["run", "--n", "3", "--ideal"]) == 0
    assert "B=1.000000" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--n", "3", "--bogus"],
        ["frobnicate"],
        ["run", "--n", "3", "--ideal", "--preset", "chip"],
        ["run", "--n", "3", "--preset", "chip", "--t1", "20"],
        ["run", "--n", "3", "--preset", "chip", "--pe", "0.02"],
        ["run", "--n", "3", "--ideal", "--t2", "10"],
        ["run", "--n", "3", "--mode", "fast"],
    ],
)
def test_usage_errors(argv):
    assert main(argv) == 1


def test_input_error_exit_code(tmp_path):
    spec = tmp_path / "bad.spec"
    spec.write_text("n_list = 3\ncolor = blue\n")
    assert main(["sweep", "--spec", str(spec)]) == 1
    assert main(["run", "--n", "12", "--ideal"]) == 1


def test_resource_error_exit_code():
    assert main(["search", "--n", "30", "--m", "9"]) == 2
