import json

import pandas as pd
import pytest

from qdecay import config
from qdecay.main import commands
from qdecay.errors import NumericalError
from qdecay.main.cli import main
from qdecay.services.verification import Status, SuiteResult, VerifyReport


def run_sweep(path, *extra):
    return main(["sweep", "--scenario", "dephasing-werner", "--alpha-steps", "3", "--gamma-steps", "3",
                 "--out", str(path), *extra])


def test_sweep_to_file(tmp_path):
    out = tmp_path / "werner.csv"
    assert run_sweep(out) == 0
    df = pd.read_csv(out)
    assert list(df.columns) == config.CSV_COLUMNS
    assert len(df) == 9
    assert out.read_text().splitlines()[0] == "scenario,alpha,gamma,concurrence,ip,ip_branch"


def test_sweep_output_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_sweep(a) == 0
    assert run_sweep(b, "--workers", "2") == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_json_to_stdout(capsys):
    assert main(["sweep", "--scenario", "gad-q1", "--alpha-steps", "2", "--gamma-steps", "2", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [(r["alpha"], r["gamma"]) for r in data] == [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]


def test_point(capsys):
    assert main(["point", "--scenario", "dephasing-werner", "--alpha", "0.8", "--gamma", "0.5"]) == 0
    captured = capsys.readouterr()
    row = captured.out.splitlines()[1].split(",")
    assert float(row[3]) == pytest.approx(0.8 * 1.0 - 0.5)
    assert "closed form concurrence" in captured.err


def test_point_from_rate_and_time(capsys):
    assert main(["point", "--scenario", "gad-q1", "--alpha", "0.3", "--rate", "1.0", "--time", "0.6931471805599453"]) == 0
    row = capsys.readouterr().out.splitlines()[1].split(",")
    assert float(row[2]) == pytest.approx(0.5, abs=1e-12)


def test_death(tmp_path):
    out = tmp_path / "death.csv"
    assert main(["death", "--scenario", "dephasing-werner", "--alpha", "0.8", "--grid", "200", "--out", str(out)]) == 0
    df = pd.read_csv(out, dtype={"gamma_star_concurrence": str, "gamma_star_ip": str})
    assert float(df.loc[0, "gamma_star_concurrence"]) == pytest.approx(0.875, abs=1e-7)
    assert df.loc[0, "gamma_star_ip"] == "asymptotic"


def test_death_nonadditivity(tmp_path):
    out = tmp_path / "nonadditive.csv"
    assert main(["death", "--scenario", "dephasing+gad", "--alpha", "0.3", "--grid", "200",
                 "--nonadditivity", "--out", str(out)]) == 0
    df = pd.read_csv(out)
    assert bool(df.loc[0, "nonadditive"])


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--scenario", "nope"],
        ["sweep"],
        ["sweep", "--scenario", "gad-q1", "--alpha-steps", "1"],
        ["sweep", "--scenario", "gad-q1", "--format", "xml"],
        ["point", "--scenario", "gad-q1", "--alpha", "1.5", "--gamma", "0.1"],
        ["point", "--scenario", "gad-q1", "--alpha", "0.5"],
        ["point", "--scenario", "gad-q1", "--alpha", "0.5", "--gamma", "0.1", "--rate", "1", "--time", "1"],
        ["point", "--scenario", "gad-q1", "--alpha", "0.5", "--rate", "1"],
        ["death", "--scenario", "gad-q1", "--eps-death", "-1"],
        ["verify", "--resolution", "10"],
    ],
)
def test_configuration_errors(argv):
    assert main(argv) == commands.EXIT_CONFIG


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--alpha-steps", "many"])
    assert exc.value.code == 2


def test_unwritable_output(tmp_path):
    blocker = tmp_path / "file.txt"
    blocker.write_text("x")
    assert run_sweep(blocker / "out.csv") == commands.EXIT_OUTPUT


def test_verify_failure_exit_code(monkeypatch):
    failing = VerifyReport([SuiteResult("kraus-completeness", Status.FAIL, "broken")])
    monkeypatch.setattr(commands, "run_verification", lambda **kwargs: failing)
    assert main(["verify"]) == commands.EXIT_VERIFY


@pytest.mark.slow
def test_verify_writes_ledger_and_curves(tmp_path):
    out = tmp_path / "ledger.csv"
    assert main(["verify", "--trials", "5", "--resolution", "5000", "--out", str(out)]) == 0
    ledger = pd.read_csv(out)
    assert (ledger["status"] == "WARN").sum() == 2
    assert (tmp_path / "ledger_curves.csv").exists()


def test_numerical_error_exits_1(monkeypatch, capsys):
    def broken(*args, **kwargs):
        raise NumericalError("spin-flip spectrum has imaginary residue 1.000e+00")

    monkeypatch.setattr(commands, "evaluate_point", broken)
    assert main(["point", "--scenario", "gad-q1", "--alpha", "0.3", "--gamma", "0.4"]) == commands.EXIT_ERROR
    assert "NumericalError" in capsys.readouterr().err


def test_death_help_describes_eps_override(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["death", "--help"])
    assert exc.value.code == 0
    text = " ".join(capsys.readouterr().out.split())
    assert "guard band" in text
    assert "finite gamma*" in text
