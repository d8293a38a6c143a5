"""Byte-deterministic rendering of reports and tables.

Three formats: an aligned human table, CSV (scientific notation, nine
significant digits) and line-delimited JSON records carrying units.
"""

import csv
import io
import json
import math
import os

FORMATS = ("table", "csv", "records")


def _sci(x):
    return f"{x:.8e}"


def format_csv_value(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _sci(v) if math.isfinite(v) else str(v)
    return str(v)


def _human_value(v):
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.6g}" if math.isfinite(v) else str(v)
    return str(v)


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def column_name(name, unit):
    return f"{name}_{unit}" if unit not in ("", "1") else name


def _use_color(stream):
    if os.environ.get("NO_COLOR"):
        return False
    return bool(getattr(stream, "isatty", lambda: False)())


def _bold(text, color):
    return f"\033[1m{text}\033[0m" if color else text


def _align(rows, color=False, left=(0,)):
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for k, r in enumerate(rows):
        cells = [
            c.ljust(w) if i in left else c.rjust(w)
            for i, (c, w) in enumerate(zip(r, widths))
        ]
        line = "  ".join(cells).rstrip()
        lines.append(_bold(line, color) if k == 0 else line)
    return "\n".join(lines) + "\n"


def emit_report(fields, fmt="table", color=False):
    """Render one report given ``(name, unit, value)`` triples."""
    if fmt == "table":
        rows = [("quantity", "value", "unit")]
        rows += [(n, _human_value(v), u if u != "1" else "") for n, u, v in fields]
        return _align(rows, color, left=(0, 2))
    return emit_table([(n, u) for n, u, _ in fields], [[v for _, _, v in fields]], fmt, color)


def emit_table(header, body, fmt="table", color=False):
    """Render rows; ``header`` is a list of ``(name, unit)`` pairs."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([column_name(n, u) for n, u in header])
        for row in body:
            w.writerow([format_csv_value(v) for v in row])
        return buf.getvalue()
    if fmt == "records":
        lines = []
        for row in body:
            rec = {n: {"value": _json_value(v), "unit": u} for (n, u), v in zip(header, row)}
            lines.append(json.dumps(rec, ensure_ascii=False))
        return "\n".join(lines) + "\n"
    if fmt == "table":
        labels = [f"{n} [{u}]" if u not in ("", "1") else n for n, u in header]
        rows = [labels] + [[_human_value(v) for v in row] for row in body]
        return _align(rows, color)
    raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")
