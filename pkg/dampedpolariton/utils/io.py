# coding: utf-8

"""
CSV and JSON writers for analysis records; floats carry 12 significant digits
so repeated runs give byte-identical files
"""

import csv
import io
import json
import math
import os.path as osp
import sys
from typing import Any, Dict, List, Optional, Sequence

from .helper import mkdir

SIGNIFICANT_DIGITS = 12


def format_value(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.{SIGNIFICANT_DIGITS}g}"
    if hasattr(value, "item"):  # numpy scalar
        return format_value(value.item())
    return value


def _columns(records: Sequence[Dict[str, Any]]) -> List[str]:
    columns: List[str] = []
    for r in records:
        for key in r:
            if key not in columns:
                columns.append(key)
    return columns


def to_csv(records: Sequence[Dict[str, Any]], columns: Optional[Sequence[str]] = None) -> str:
    columns = list(columns) if columns is not None else _columns(records)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in records:
        writer.writerow(["" if r.get(c) is None else format_value(r.get(c)) for c in columns])
    return buf.getvalue()


def to_json(records: Sequence[Dict[str, Any]], meta: Optional[Dict[str, Any]] = None) -> str:
    def norm(v):
        if isinstance(v, dict):
            return {k: norm(x) for k, x in v.items()}
        if isinstance(v, (list, tuple)):
            return [norm(x) for x in v]
        f = format_value(v)
        # back to a JSON number, rounded
        if isinstance(f, str) and not isinstance(v, str) and f != "nan":
            return float(f)
        return f

    doc = {"meta": norm(meta or {}), "records": [norm(r) for r in records]}
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def write_records(records: Sequence[Dict[str, Any]], path: Optional[str], fmt: str = "csv",
                  columns: Optional[Sequence[str]] = None, meta: Optional[Dict[str, Any]] = None) -> str:
    """Write to `path`, or to standard output when `path` is None; returns the text."""
    text = to_csv(records, columns) if fmt == "csv" else to_json(records, meta)
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        mkdir(osp.dirname(path))
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    return text
