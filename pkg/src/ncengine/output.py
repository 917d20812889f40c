"""Deterministic CSV / JSON serialization.

Floats are written with 17 significant digits so that a value read back is
bit-identical; NaN is written as ``nan`` in CSV and ``null`` in JSON.
"""

from __future__ import annotations

import csv
import io
import json
import math


def fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def render_csv(rows: list[dict], fields, meta: dict | None = None) -> str:
    buf = io.StringIO()
    for key, value in (meta or {}).items():
        buf.write(f"# {key} = {fmt(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([fmt(row.get(f)) for f in fields])
    return buf.getvalue()


def render_json(rows: list[dict], fields=None, meta: dict | None = None) -> str:
    if fields is not None:
        rows = [{f: row.get(f) for f in fields} for row in rows]
    doc = {"meta": _jsonable(meta or {}), "rows": _jsonable(rows)}
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def render(rows, fields, meta=None, fmt_name="csv") -> str:
    if fmt_name == "json":
        return render_json(rows, fields, meta)
    return render_csv(rows, fields, meta)


def read_csv(text: str) -> tuple[dict, list[dict]]:
    """Inverse of :func:`render_csv`; values stay strings."""
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            meta[key.strip()] = value.strip()
        else:
            body.append(line)
    return meta, list(csv.DictReader(body))
