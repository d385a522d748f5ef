import numpy as np
import pytest

from qdecay.linalg import I2
from qdecay.models.channels import KrausChannel
from qdecay.services.verification import (
    Status,
    closed_form_ledger,
    ip_monotonicity,
    kraus_completeness,
    order_swap,
    run_verification,
    trace_and_positivity,
)


def broken_channel():
    return KrausChannel("broken", (np.sqrt(1.0 + 1e-3) * I2,))


@pytest.fixture(scope="module")
def report():
    return run_verification(seed=7, trials=5, directions=3, resolution=5000, monotone_steps=(5, 21))


def test_no_failures_and_two_known_misprints(report):
    assert report.count(Status.FAIL) == 0
    assert not report.failed
    warned = sorted(r.name for r in report.results if r.status is Status.WARN)
    assert warned == ["closed-form/depolarizing/concurrence", "closed-form/gad-q1/lambda1-shortcut"]


def test_ledger_frame(report):
    df = report.to_frame()
    assert list(df.columns) == ["suite", "status", "metric", "detail"]
    assert len(df) == len(report.results)
    assert set(df["status"]) <= {"PASS", "WARN", "INFO"}


def test_curves_frame(report):
    curves = report.curves_frame()
    assert list(curves.columns) == ["suite", "alpha", "gamma", "printed", "pipeline", "deviation"]
    shortcut = curves[curves["suite"] == "closed-form/gad-q1/lambda1-shortcut"]
    assert len(shortcut) == 21 * 21
    assert np.allclose(shortcut["deviation"], shortcut["printed"] - shortcut["pipeline"])


def test_broken_channel_fails():
    assert kraus_completeness([broken_channel()]).status is Status.FAIL
    trace, _ = trace_and_positivity(np.random.default_rng(1), 3, [broken_channel()])
    assert trace.status is Status.FAIL
    assert run_verification(seed=1, trials=2, directions=2, resolution=1000, channels=[broken_channel()]).failed


def test_order_swap_passes():
    assert order_swap(points=5).status is Status.PASS


def test_closed_form_ledger_statuses():
    rows = {r.name: r.status for r in closed_form_ledger(points=6)}
    assert rows["closed-form/werner-dephasing/concurrence"] is Status.PASS
    assert rows["closed-form/werner-dephasing/transverse-branch"] is Status.INFO
    assert rows["closed-form/gad/elements"] is Status.PASS
    assert rows["closed-form/depolarizing/concurrence"] is Status.WARN


def test_monotone_rows_in_report(report):
    names = [r.name for r in report.results if r.name.startswith("ip-monotone/")]
    assert names == [
        "ip-monotone/dephasing-werner",
        "ip-monotone/gad-q1",
        "ip-monotone/gad-q23",
        "ip-monotone/depolarizing",
        "ip-monotone/dephasing+gad",
    ]


@pytest.mark.slow
def test_ip_monotonicity_full_grid():
    rows = {r.name.split("/", 1)[1]: r for r in ip_monotonicity()}
    for name in ("dephasing-werner", "depolarizing"):
        assert rows[name].status is Status.PASS
        assert rows[name].metric <= 1e-12
    rises = {"gad-q1": 4.68e-3, "gad-q23": 1.07e-3, "dephasing+gad": 2.05e-3}
    for name, rise in rises.items():
        assert rows[name].status is Status.INFO
        assert rows[name].metric == pytest.approx(rise, abs=2e-5)
        assert "IP rises by" in rows[name].detail
