import io
import json
import math

import pytest

from phonograd.emit import _use_color, column_name, emit_report, emit_table, format_csv_value
from phonograd.report import report_fields, run_report
from phonograd.scenario import load_preset


@pytest.fixture(scope="module")
def fields():
    return report_fields(run_report(load_preset("earth-1e6")))


def test_csv_header_units(fields):
    header = emit_report(fields, "csv").splitlines()[0]
    assert "delta_rel,delta_abs_s^-2,force_equiv_gal" in header


def test_csv_nine_significant_digits():
    assert format_csv_value(0.033267) == "3.32670000e-02"
    assert format_csv_value(None) == ""
    assert format_csv_value(7) == "7"
    assert format_csv_value(True) == "true"
    assert format_csv_value(math.inf) == "inf"


def test_csv_values_parse_back(fields):
    lines = emit_report(fields, "csv").splitlines()
    assert len(lines) == 2
    cols = dict(zip(lines[0].split(","), lines[1].split(",")))
    assert float(cols["delta_rel"]) == pytest.approx(dict((n, v) for n, _, v in fields)["delta_rel"], rel=1e-8)


def test_records_carry_units(fields):
    text = emit_report(fields, "records")
    (line,) = text.splitlines()
    rec = json.loads(line)
    assert rec["delta_abs"]["unit"] == "s^-2"
    assert rec["force_equiv"]["unit"] == "gal"
    assert rec["delta_rel"]["value"] == pytest.approx(0.033267, rel=1e-4)


def test_records_infinity_is_string():
    text = emit_table([("x", "s")], [[math.inf]], "records")
    assert json.loads(text) == {"x": {"value": "inf", "unit": "s"}}


def test_deterministic_bytes(fields):
    for fmt in ("table", "csv", "records"):
        a = emit_report(fields, fmt)
        b = emit_report(report_fields(run_report(load_preset("earth-1e6"))), fmt)
        assert a == b


def test_table_has_no_escape_without_color(fields):
    assert "\033[" not in emit_report(fields, "table")
    assert "\033[1m" in emit_report(fields, "table", color=True)


def test_no_color_env(monkeypatch):
    class Tty(io.StringIO):
        def isatty(self):
            return True

    monkeypatch.delenv("NO_COLOR", raising=False)
    assert _use_color(Tty())
    monkeypatch.setenv("NO_COLOR", "1")
    assert not _use_color(Tty())
    assert not _use_color(io.StringIO())


def test_column_name():
    assert column_name("delta_rel", "1") == "delta_rel"
    assert column_name("n0", "cm^-3") == "n0_cm^-3"
    assert column_name("scheme", "") == "scheme"


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_table([("x", "")], [[1.0]], "xml")
