"""Tabular output: CSV, JSON and aligned text.

Rows are plain dicts keyed by column name.  Numbers are rounded half-even
to ``Decimal`` before rendering, so the CSV and JSON forms of the same
rows parse back to identical floats.
"""

from __future__ import annotations

import csv
import io
import json
import math
from decimal import ROUND_HALF_EVEN, Context, Decimal

FORMATS = ("csv", "json", "pretty")
NONE_TOKEN = "none"


def sig(x, digits: int = 12):
    """Round ``x`` half-even to ``digits`` significant digits.

    Non-finite values and ``None`` pass through unchanged.
    """
    if x is None or not math.isfinite(x):
        return x
    if x == 0:
        return Decimal(0)
    d = Context(prec=digits, rounding=ROUND_HALF_EVEN).create_decimal(repr(float(x)))
    return d.normalize()


def places(x, digits: int) -> Decimal:
    return Decimal(repr(float(x))).quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN)


def _text(value) -> str:
    if value is None:
        return NONE_TOKEN
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Decimal):
        return format(value, "f") if value.adjusted() >= -6 else str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_value(value):
    if isinstance(value, Decimal):
        return float(value)
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_text(row[c]) for c in columns])
    return buf.getvalue()


def to_json(rows: list[dict], columns: list[str]) -> str:
    data = [{c: _json_value(row[c]) for c in columns} for row in rows]
    return json.dumps(data, indent=1, allow_nan=False) + "\n"


def to_pretty(rows: list[dict], columns: list[str]) -> str:
    cells = [columns] + [[_text(row[c]) for c in columns] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    lines = ["  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def render(rows: list[dict], columns: list[str], fmt: str) -> str:
    if fmt == "csv":
        return to_csv(rows, columns)
    if fmt == "json":
        return to_json(rows, columns)
    if fmt == "pretty":
        return to_pretty(rows, columns)
    raise ValueError(f"unknown format {fmt!r}")


def parse_csv(text: str) -> list[dict]:
    """Read CSV produced by :func:`to_csv` back into typed rows."""

    def value(s: str):
        if s == NONE_TOKEN:
            return None
        if s in ("true", "false"):
            return s == "true"
        try:
            return int(s)
        except ValueError:
            pass
        try:
            return float(s)
        except ValueError:
            return s

    return [{k: value(v) for k, v in row.items()} for row in csv.DictReader(io.StringIO(text))]
