"""CSV and JSON rendering of flat records.

CSV: one header row, ``\\n`` line endings, floats as 17 significant digits,
``true``/``false`` booleans and empty cells for missing values. Parsing an
emitted table and rendering it again gives identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Mapping, Sequence


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def render_csv(records: Iterable[Mapping], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        writer.writerow([format_cell(rec.get(c)) for c in columns])
    return buf.getvalue()


def _parse_cell(text: str):
    if text == "":
        return None
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return float(text)
    except ValueError:
        return text


def parse_csv(text: str) -> tuple[list[str], list[dict]]:
    """Inverse of :func:`render_csv`: returns ``(columns, records)``."""
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        return [], []
    columns = rows[0]
    records = [dict(zip(columns, map(_parse_cell, row))) for row in rows[1:]]
    return columns, records


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render_json(data) -> str:
    """Flat record (or list of records) as JSON with a trailing newline."""
    if isinstance(data, Mapping):
        payload = {k: _json_safe(v) for k, v in data.items()}
    else:
        payload = [{k: _json_safe(v) for k, v in rec.items()} for rec in data]
    return json.dumps(payload, indent=2) + "\n"
