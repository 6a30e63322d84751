import csv

import numpy as np
import pytest

from halfharmonic import cli
from halfharmonic.experiments import COLUMNS


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_blaschke_energy_stdout(capsys):
    code, out, _ = run(capsys, "blaschke-energy", "--k-max", "2")
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    assert tuple(rows[0]) == COLUMNS["blaschke-energy"]
    assert rows[1][0] == "1" and rows[1][1] == "6.28318531"


def test_nine_significant_digits():
    assert cli._fmt(np.pi) == "3.14159265"
    assert cli._fmt(1e-7 / 3) == "3.33333333e-08"
    assert cli._fmt(float("nan")) == "nan"
    assert cli._fmt(3) == "3"


def test_csv_file_and_plot_data(tmp_path, capsys):
    out = tmp_path / "conc.csv"
    code, _, err = run(capsys, "concentration-demo", "--out", str(out), "--plot-data")
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 9 and rows[-1]["resolved_degree"] == "0"
    assert "energy drop" in err
    pairs = np.loadtxt(tmp_path / "conc.energy.dat")
    assert pairs.shape == (9, 2)


def test_reproducible_output(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "blaschke-energy", "--seed", "3", "--out", str(a))
    run(capsys, "blaschke-energy", "--seed", "3", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_unconverged_exit_code(capsys):
    code, out, err = run(capsys, "lambda-sweep", "--lambdas", "1.0", "--n", "128",
                         "--max-iter", "2")
    assert code == 2
    assert "unconverged" in err
    assert len(out.splitlines()) == 2


def test_converged_sweep_exit_zero(capsys):
    code, _, err = run(capsys, "lambda-sweep", "--lambdas", "0.5,1,2", "--n", "128")
    assert code == 0
    assert "estimate" in err


@pytest.mark.parametrize("argv", [
    ["nope"],
    ["blaschke-energy", "--n", "100"],
    ["bubble-sweep", "--eps", "x"],
    ["pathological", "--profile", "other"],
    [],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = cli.main(argv)
        raise SystemExit(code)
    assert info.value.code == 1


def test_pathological_command(capsys):
    code, out, _ = run(capsys, "pathological", "--levels", "8,9,10")
    assert code == 0
    rows = list(csv.DictReader(out.splitlines()))
    assert [r["level"] for r in rows] == ["8", "9", "10"]


def test_bubble_sweep_command(capsys):
    code, out, err = run(capsys, "bubble-sweep", "--eps", "0.2 0.1")
    assert code == 0 and "slope" in err
    rows = list(csv.DictReader(out.splitlines()))
    assert all(float(r["gap_minus_2pi"]) < 0 for r in rows)


def test_unattained_command(capsys):
    code, out, err = run(capsys, "unattained-class", "--max-iter", "20")
    assert code == 0
    assert "competitor energy" in err
    rows = list(csv.DictReader(out.splitlines()))
    assert rows[0]["iteration"] == "0" and rows[0]["degree"] == "2"
