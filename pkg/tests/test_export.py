import json

import pandas as pd
import pytest

from qdecay import config
from qdecay.services.dynamics import DeathReport, Measure, sweep
from qdecay.services.export import (
    death_frame,
    heatmap_matrix,
    json_text,
    records_to_frame,
    render_table,
    sweep_summary,
    write_table,
)


@pytest.fixture
def frame():
    return records_to_frame(sweep("gad-q1", 3, 4))


def test_records_to_frame(frame):
    assert list(frame.columns) == config.CSV_COLUMNS
    assert len(frame) == 12
    assert frame["ip_branch"].dtype.kind == "i"


def test_csv_is_fixed_precision_and_deterministic(frame, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    write_table(frame, str(a))
    write_table(records_to_frame(sweep("gad-q1", 3, 4)), str(b))
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().split("\n")
    assert lines[0] == ",".join(config.CSV_COLUMNS)
    assert lines[1].startswith("gad-q1,0.000000000000,0.000000000000,")
    assert b"\r" not in a.read_bytes()


def test_json_records(frame, tmp_path):
    path = tmp_path / "nested" / "out.json"
    write_table(frame, str(path), "json")
    data = json.loads(path.read_text())
    assert len(data) == 12
    assert set(data[0]) == set(config.CSV_COLUMNS)
    assert json.loads(json_text(frame)) == data


def test_unknown_format(frame, tmp_path):
    with pytest.raises(ValueError):
        write_table(frame, str(tmp_path / "x.txt"), "xml")


def test_heatmap_matrix(frame):
    wide = heatmap_matrix(frame, "concurrence")
    assert list(wide.columns) == ["alpha", "0.000000", "0.333333", "0.666667", "1.000000"]
    assert list(wide["alpha"]) == [0.0, 0.5, 1.0]
    with pytest.raises(ValueError):
        heatmap_matrix(frame, "purity")


def test_death_frame_labels():
    rows = [(DeathReport(0.8, Measure.CONCURRENCE, 0.875), DeathReport(0.8, Measure.IP, None))]
    df = death_frame(rows, "dephasing-werner")
    assert df.loc[0, "gamma_star_concurrence"] == "0.87500000"
    assert df.loc[0, "gamma_star_ip"] == "asymptotic"


def test_summary_and_render(frame):
    both = pd.concat([frame, records_to_frame(sweep("dephasing-werner", 3, 4))], ignore_index=True)
    summary = sweep_summary(both)
    assert list(summary["scenario"]) == ["gad-q1", "dephasing-werner"]
    assert list(summary["points"]) == [12, 12]
    assert "gad-q1" in render_table(summary)
