import pytest

from phonograd.emit import emit_report, emit_table
from phonograd.errors import InvalidAxis, TrapUnstable
from phonograd.report import (
    SweepSpec,
    report_fields,
    run_comparison,
    run_report,
    run_sweep,
    sweep_from_dict,
    sweep_table,
)
from phonograd.scenario import dumps, load_preset, loads, scenario_to_dict, with_overrides


def fields(report):
    return {n: v for n, _, v in report_fields(report)}


def test_earth_1e6_report():
    f = fields(run_report(load_preset("earth-1e6")))
    assert f["delta_rel"] == pytest.approx(3.3267e-2, rel=1e-4)
    assert 1e-8 <= f["delta_abs"] <= 1e-6
    assert f["delta_rel_oom"] == pytest.approx(1e-2)
    assert f["t_granted"] == 100.0
    assert f["limiting_factor"] == "Requested"
    assert f["tf_validity"] == "valid"
    assert f["baseline_length"] == pytest.approx(2 * f["R_tf"], rel=1e-15)
    assert f["warnings"] == ""


def test_sphere_1e8_report():
    f = fields(run_report(load_preset("sphere20mg-1e8")))
    assert f["delta_rel_oom"] == pytest.approx(1e-3)
    assert 1e-3 / 3 <= f["delta_rel"] <= 3e-3 * 1.5


def test_zero_gradient_report():
    sc = with_overrides(load_preset("earth-1e6"), ["source.M=0.0"])
    rep = run_report(sc)
    f = fields(rep)
    assert f["delta_rel"] is None and f["delta_rel_shot"] is None
    assert f["delta_abs"] > 0
    assert f["lambda"] == 1.0 and f["z_g"] == 0.0
    assert sum("zero gradient" in w for w in rep.warnings) == 1


def test_pair_report_matches_single_for_l3():
    a = fields(run_report(load_preset("earth-1e8")))
    b = fields(run_report(with_overrides(load_preset("earth-1e8"), ["mode.branch=Pair"])))
    assert b["delta_rel"] == pytest.approx(a["delta_rel"], rel=1e-14)
    assert b["domega_exact"] == pytest.approx(b["domega_approx"], rel=1e-3)


def test_stage_named_on_failure():
    sc = with_overrides(load_preset("earth-1e6"), ["source.R=1.0"])
    with pytest.raises(TrapUnstable) as info:
        run_report(sc)
    assert info.value.stage == "gravity_trap"


def test_warnings_collected_once():
    sc = with_overrides(
        load_preset("sphere20mg-1e6"),
        ["source.R=0.7e-3", "condensate.temperature_nk=50.0", "t_requested=1e6"],
    )
    rep = run_report(sc)
    assert len(rep.warnings) == len(set(rep.warnings))
    joined = " | ".join(rep.warnings)
    for needle in ("quadratic expansion", "k_B T / mu", "clipped"):
        assert sum(needle in w for w in rep.warnings) == 1, joined


def test_dipole_warning():
    sc = with_overrides(load_preset("earth-1e6"), ["mode.l=1", "mode.branch=LMinusOne"])
    rep = run_report(sc)
    assert any("dipole" in w for w in rep.warnings)


def test_first_order_discrepancy_warning():
    d = scenario_to_dict(load_preset("earth-1e6"))
    d["source"] = {"kind": "Direct", "epsilon": 0.5}
    from phonograd.scenario import scenario_from_dict

    rep = run_report(scenario_from_dict(d))
    assert any("first-order" in w for w in rep.warnings)


def test_every_field_has_unit_label():
    for name, unit, value in report_fields(run_report(load_preset("earth-1e6"))):
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            assert unit != "", name


def test_preset_round_trip_report_bytes():
    sc = load_preset("earth-1e8")
    a = emit_report(report_fields(run_report(sc)), "csv")
    b = emit_report(report_fields(run_report(loads(dumps(sc)))), "csv")
    assert a == b


def test_comparison_rows():
    sc = with_overrides(load_preset("earth-1e8"), ["comparison.n_kick=18"])
    rows, (free, trapped), notes = run_comparison(sc)
    assert [r.name for r in rows] == ["phononic", "free-fall", "trapped"]
    assert free.n_kick == 18
    assert any("n_kick" in n for n in notes)
    assert 1e-6 / 3 <= trapped.delta_rel <= 3e-6


# ---------------------------------------------------------------- sweeps


def base():
    return scenario_to_dict(load_preset("earth-1e6"))


def test_sweep_atom_number_with_linked_squeezing():
    spec = sweep_from_dict(
        {
            "sweep": {
                "base": "earth-1e6",
                "axis": "condensate.n_atoms",
                "values": [1e6, 1e8, 1e10],
                "linked": {"scheme.n_r": [1e3, 1e4, 1e5]},
            }
        }
    )
    rows = run_sweep(spec)
    rel = [fields(r.report)["delta_rel"] for r in rows]
    # single-mode bound scales as 1/N_r
    assert rel == pytest.approx([3.3267e-2, 3.3282e-3, 3.3284e-4], rel=1e-4)


def test_sweep_single_value_equals_report():
    spec = SweepSpec(base(), "condensate.n_atoms", (1e6,))
    (row,) = run_sweep(spec)
    assert report_fields(row.report) == report_fields(run_report(load_preset("earth-1e6")))


def test_sweep_pair_l_decreasing():
    d = base()
    d["mode"]["branch"] = "Pair"
    spec = SweepSpec(d, "mode.l", tuple(range(2, 9)))
    rows = run_sweep(spec)
    dw = [fields(r.report)["domega_exact"] for r in rows]
    assert all(b < a for a, b in zip(dw, dw[1:]))
    header, body = sweep_table(spec, rows)
    assert len(body) == 7


def test_sweep_row_failures_recorded():
    spec = SweepSpec(base(), "source.R", (6.371e6, 1.0, 6.371e7))
    rows = run_sweep(spec)
    assert rows[0].error is None and rows[2].error is None
    assert rows[1].report is None and "TrapUnstable" in rows[1].error
    assert "gravity_trap" in rows[1].error


def test_sweep_range():
    spec = sweep_from_dict(
        {"sweep": {"base": "earth-1e6", "axis": "t_requested", "range": {"start": 1.0, "stop": 1000.0, "num": 4, "spacing": "log"}}}
    )
    assert spec.values == pytest.approx((1.0, 10.0, 100.0, 1000.0), rel=1e-14)
    spec = sweep_from_dict(
        {"sweep": {"base": "earth-1e6", "axis": "mode.l", "range": {"start": 2, "stop": 5, "num": 4}}}
    )
    assert spec.values == (2, 3, 4, 5)


@pytest.mark.parametrize(
    "sweep",
    [
        {"base": "earth-1e6", "axis": "name", "values": [1]},
        {"base": "earth-1e6", "axis": "condensate.n_atoms", "values": []},
        {"base": "earth-1e6", "axis": "mode.l", "values": [2.5]},
        {"base": "earth-1e6", "axis": "condensate.n_atoms", "values": ["x"]},
        {"base": "earth-1e6", "axis": "condensate.n_atoms", "values": [1e6], "linked": {"scheme.n_r": [1, 2]}},
        {"base": "earth-1e6", "axis": "t_requested", "range": {"start": 0, "stop": 1, "num": 3, "spacing": "log"}},
    ],
)
def test_sweep_invalid_axis(sweep):
    with pytest.raises(InvalidAxis):
        sweep_from_dict({"sweep": sweep})


def test_sweep_parallel_matches_serial():
    spec = SweepSpec(base(), "condensate.n_atoms", (1e5, 1e6, 1e7, 1e8))
    h1, b1 = sweep_table(spec, run_sweep(spec, workers=1))
    h2, b2 = sweep_table(spec, run_sweep(spec, workers=3))
    assert emit_table(h1, b1, "csv") == emit_table(h2, b2, "csv")


def test_sweep_table_shape():
    spec = SweepSpec(base(), "condensate.n_atoms", (1e6, 1e7), outputs=("delta_rel", "delta_abs"))
    header, body = sweep_table(spec, run_sweep(spec))
    assert header == [("condensate.n_atoms", ""), ("delta_rel", "1"), ("delta_abs", "s^-2"), ("error", "")]
    assert len(body) == 2
    bad = SweepSpec(base(), "condensate.n_atoms", (1e6,), outputs=("nope",))
    with pytest.raises(InvalidAxis):
        sweep_table(bad, run_sweep(bad))
