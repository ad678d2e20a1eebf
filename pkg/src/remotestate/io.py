"""Deterministic CSV/JSON emitters.

Floats are written with 12 significant digits, rows in the order given, LF
line endings and no timestamps, so identical inputs give byte-identical files.
"""

import csv
import io
import json
import math
import sys

SCHEMA_VERSION = 1


def fmt(x):
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return "0"
    return format(x, ".12g")


def _jsonable(obj):
    if isinstance(obj, float):
        if math.isinf(obj) or math.isnan(obj):
            return fmt(obj)
        return float(format(obj, ".12g"))
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item"):
        return _jsonable(obj.item())
    return obj


def csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def json_text(payload):
    body = {"schema_version": SCHEMA_VERSION}
    body.update(_jsonable(payload))
    return json.dumps(body, indent=2, sort_keys=False) + "\n"


def table_text(header, rows, fmt_name, name):
    if fmt_name == "json":
        return json_text({"table": name, "columns": list(header),
                          "rows": [list(r) for r in rows]})
    return csv_text(header, rows)


def emit(text, path=None):
    """Write ``text`` to ``path`` (LF endings), or to stdout when ``path`` is None."""
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)
