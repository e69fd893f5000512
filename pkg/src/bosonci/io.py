"""Deterministic CSV / JSON writers.

Floats are written in scientific notation with 17 significant digits so
that every value round-trips exactly; lines end with a bare newline.
"""
import json
import math
from pathlib import Path

import numpy as np


def format_float(value):
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.16e}"


def _cell(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return "" if value is None else str(value)


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def read_csv(path):
    """Parse a file written by :func:`write_csv` into (header, rows of strings)."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


def _emit(obj, indent=0):
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_emit(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        return "[" + ", ".join(_emit(v, indent + 1) for v in obj) + "]"
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        # JSON has no NaN / inf literals
        return format_float(obj) if math.isfinite(obj) else "null"
    return json.dumps(str(obj))


def write_json(path, payload):
    """JSON with floats in the same 17-digit scientific format as the CSV files."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(_emit(payload) + "\n")
    return path


def write_grid_1d(path, x, values, header=("x", "value")):
    return write_csv(path, header, zip(x, values))


def write_grid_2d(path, x, values):
    x = np.asarray(x)
    rows = ((x[i], x[j], values[i, j]) for i in range(len(x)) for j in range(len(x)))
    return write_csv(path, ("x1", "x2", "value"), rows)
