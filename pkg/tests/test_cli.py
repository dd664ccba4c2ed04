import csv
import io

import pytest

from coherent_qhe.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def fields(out):
    return dict(line.split(" = ", 1) for line in out.splitlines() if " = " in line)


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "--nbar", "0.5", "--n-levels", "14", "--chi", "-0.05")
    assert code == 0 and fields(out)["psd"] == "valid"
    code, out, _ = run(capsys, "validate", "--nbar", "0.5", "--n-levels", "15", "--chi", "-0.05")
    assert code == 1 and fields(out)["steady_state_bounds"] == "violated"


def test_validate_two_excited(capsys):
    code, out, _ = run(capsys, "validate", "--case", "two_excited", "--nbar", "5", "--eps-e", "0.1")
    assert code == 0 and "eps_e_bounds" in out


def test_steady(capsys):
    code, out, _ = run(capsys, "steady", "--nbar", "1", "--chi", "-0.2")
    f = fields(out)
    assert code == 0 and float(f["nbar_q"]) == pytest.approx(5 / 3, rel=1e-14) and f["regime"] == "heating"
    code, out, _ = run(capsys, "steady", "--case", "two_excited", "--nbar", "5", "--eps-e", "-1")
    assert code == 0 and fields(out)["status"] == "zero"


def test_steady_bad_input(capsys):
    code, _, err = run(capsys, "steady", "--chi", "0.1")
    assert code == 1 and "nbar" in err


def test_evolve(capsys, tmp_path):
    dest = tmp_path / "traj.csv"
    code, _, _ = run(capsys, "evolve", "--nbar", "1", "--tau-end", "2", "--dtau", "0.5", "-o", str(dest))
    rows = list(csv.reader(io.StringIO(dest.read_text())))
    assert code == 0 and rows[0] == ["tau", "nbar"] and len(rows) == 6
    assert float(rows[-1][0]) == 2.0


def test_evolve_divergent(capsys):
    # gain exceeds loss when the effective temperature is negative
    code, _, err = run(capsys, "evolve", "--case", "two_excited", "--excited-pop", "0.3", "--eps-e", "0.9",
                       "--nbar0", "1", "--tau-end", "1000")
    assert code == 1 and "diverged" in err


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--case", "four_level", "--nbar", "2", "--eps-g", "0.2", "--eps-e", "-0.1")
    assert code == 0 and float(fields(out)["relative_residual"]) < 1e-8


def test_efficiency(capsys):
    code, out, _ = run(capsys, "efficiency", "--nbar-hot", "0.5", "--chi", "-0.05", "--n-levels", "14")
    assert code == 0 and float(fields(out)["eta_q"]) == pytest.approx(0.95558927869942, abs=1e-12)
    code, _, _ = run(capsys, "efficiency", "--nbar-hot", "0.5", "--chi", "-0.05", "--n-levels", "15")
    assert code == 1


def test_sweep_and_figure(capsys, tmp_path):
    spec = tmp_path / "s.ini"
    spec.write_text("[sweep]\ncase=two_excited\n[fixed]\nnbar=5\n[axis.eps_e]\nmin=-1\nmax=0.2\nsteps=7\n")
    code, out, _ = run(capsys, "sweep", "--spec", str(spec), "--set", "nbar=4")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 7 and rows[0]["nbar"] == "4"
    code, out, _ = run(capsys, "figure", "fig3b", "--format", "json")
    assert code == 0 and out.startswith("[")


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "sweep", "--spec", str(tmp_path / "missing.ini"))[0] == 2
    bad = tmp_path / "bad.ini"
    bad.write_text("[sweep]\ncase=nope\n")
    assert run(capsys, "sweep", "--spec", str(bad))[0] == 1
    good = tmp_path / "g.ini"
    good.write_text("[sweep]\ncase=two_excited\n[fixed]\nnbar=5\n[axis.eps_e]\nvalues=0\n")
    assert run(capsys, "sweep", "--spec", str(good), "-o", str(tmp_path / "no" / "dir.csv"))[0] == 2
    with pytest.raises(SystemExit):
        main(["figure", "fig9"])
