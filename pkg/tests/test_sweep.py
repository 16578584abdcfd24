import csv
import io
import json

import numpy as np
import pytest

from irsdf.config import ScenarioConfig
from irsdf.energy import energy_efficiency, total_power_siso
from irsdf.powerctl import power_df, power_irs, power_siso
from irsdf.sweep import (
    SweepSpec,
    SweepVariable,
    figure_table,
    solve_crossovers,
    sweep_channel_gain,
    sweep_ee_vs_rate,
    sweep_power_vs_d1,
)
from irsdf.units import watts_to_dbm


@pytest.fixture(scope="module")
def fig6():
    return figure_table("6")


def test_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(SweepVariable.D1, 50, 10, 1)
    with pytest.raises(ValueError):
        SweepSpec(SweepVariable.D1, 10, 50, 0)
    with pytest.raises(ValueError):
        SweepSpec(SweepVariable.DISTANCE, 10, 1e7, 1)


def test_grid_includes_stop_without_drift():
    v = SweepSpec(SweepVariable.RATE, 0.05, 12.0, 0.05).values()
    assert len(v) == 240
    assert v[-1] == pytest.approx(12.0, abs=1e-12)


def test_channel_gain_sweep():
    t = sweep_channel_gain(SweepSpec(SweepVariable.DISTANCE, 10, 1000, 10, log_spaced=True))
    assert t.rows[0][1] == pytest.approx(-49.5)
    assert t.rows[-1][0] == pytest.approx(1000)
    assert all(los > nlos for _, los, nlos in t.rows)
    assert all(-140 < nlos and los <= -49.5 for _, los, nlos in t.rows)
    with pytest.raises(ValueError):
        sweep_channel_gain(SweepSpec(SweepVariable.DISTANCE, 5, 100, 1))


def test_power_sweep_reference_claims():
    cfg = ScenarioConfig()
    t4 = sweep_power_vs_d1(SweepSpec(SweepVariable.D1, 10, 100, 1, cfg), 4.0)
    t6 = sweep_power_vs_d1(SweepSpec(SweepVariable.D1, 10, 100, 1, cfg), 6.0)
    row80 = dict(zip(t4.columns, t4.rows[70]))
    assert row80["d1(m)"] == 80
    assert row80["p_df(W)"] < row80["p_irs_n150(W)"]
    row80 = dict(zip(t6.columns, t6.rows[70]))
    assert row80["p_irs_n100(W)"] < row80["p_df(W)"]
    # larger surfaces always need less power
    for t in (t4, t6):
        cols = [t.columns.index(f"p_irs_n{n}(W)") for n in cfg.n_elements]
        for row in t.rows:
            assert all(row[a] > row[b] for a, b in zip(cols, cols[1:]))


def test_power_sweep_rows_recompute(scenario):
    t = sweep_power_vs_d1(SweepSpec(SweepVariable.D1, 10, 100, 1, scenario), 6.0)
    for row in t.rows[::30]:
        rec = dict(zip(t.columns, row))
        g = scenario.gains(rec["d1(m)"])
        assert rec["p_siso(W)"] == power_siso(6.0, g.beta_sd, scenario.sigma2)
        assert rec["p_df(W)"] == power_df(6.0, g, scenario.sigma2)
        assert rec["p_irs_n50(W)"] == power_irs(6.0, g, scenario.irs(50), scenario.sigma2)
        assert rec["p_df(dBm)"] == watts_to_dbm(rec["p_df(W)"])


def test_power_monotone_in_rate(scenario):
    rates = [1.0, 2.0, 4.0, 6.0, 8.0]
    tables = [sweep_power_vs_d1(SweepSpec(SweepVariable.D1, 10, 100, 10, scenario), r) for r in rates]
    for lower, higher in zip(tables, tables[1:]):
        for a, b in zip(lower.rows, higher.rows):
            assert all(y > x for x, y in zip(a[1:], b[1:]))


def test_ee_rows_consistent(fig6, scenario):
    assert len({len(r) for r in fig6.rows}) == 1
    for row in fig6.rows[::24]:
        rec = dict(zip(fig6.columns, row))
        r = rec["r_bar(bit/s/Hz)"]
        assert rec["ee_siso(bit/J)"] == pytest.approx(scenario.bandwidth_hz * r / rec["p_total_siso(W)"], rel=1e-12)
        assert rec["ee_irs(bit/J)"] == pytest.approx(scenario.bandwidth_hz * r / rec["p_total_irs(W)"], rel=1e-12)
        assert rec["ee_df(bit/J)"] == pytest.approx(scenario.bandwidth_hz * r / rec["p_total_df(W)"], rel=1e-12)
        siso = total_power_siso(r, scenario.power_model(), scenario.gains().beta_sd)
        assert rec["ee_siso(bit/J)"] == energy_efficiency(scenario.bandwidth_hz, r, siso)


def test_ee_best_column_order(fig6):
    best = fig6.column("best(scheme)")
    changes = [b for a, b in zip(best, best[1:]) if a != b]
    assert best[0] == "Siso" and changes == ["DfRelay", "Irs"]


def test_n_opt_zero_then_positive(fig6):
    n = fig6.column("n_opt(elements)")
    first = next(i for i, v in enumerate(n) if v > 0)
    assert all(v == 0 for v in n[:first]) and all(v > 0 for v in n[first:])


def test_crossovers_structure(scenario):
    found = {c.pair: c.r_bar for c in solve_crossovers(SweepSpec(SweepVariable.RATE, 0.1, 12, 0.05, scenario))}
    assert found["Siso/Irs"] is None
    assert found["Siso/DfRelay"] < found["DfRelay/Irs"]
    assert found["Irs n_opt>0 onset"] < found["DfRelay/Irs"]


def test_crossovers_not_found_when_range_misses_them(scenario):
    found = solve_crossovers(SweepSpec(SweepVariable.RATE, 0.1, 2.0, 0.05, scenario))
    assert all(c.r_bar is None for c in found)


def test_csv_layout(fig6):
    text = fig6.to_csv()
    lines = text.splitlines()
    assert lines[0].startswith("# config: {")
    config = json.loads(lines[0][len("# config: "):])
    assert config["tool"].startswith("irsdf ")
    assert config["sweep"]["variable"] == "RateTarget"
    assert lines[1].split(",")[0] == "r_bar(bit/s/Hz)"
    rows = list(csv.reader(io.StringIO("\n".join(lines[2:]))))
    assert len(rows) == len(fig6.rows)
    # ten significant digits
    assert rows[5][1] == f"{fig6.rows[5][1]:.10g}"


def test_json_layout(fig6):
    data = json.loads(fig6.to_json())
    assert data["columns"] == fig6.columns
    assert len(data["rows"]) == len(fig6.rows)
    assert data["rows"][0]["best(scheme)"] == "Siso"


def test_sweeps_reproducible():
    assert figure_table("5b").to_csv() == figure_table("5b").to_csv()


def test_unknown_figure():
    with pytest.raises(KeyError, match="valid ids"):
        figure_table("3")
