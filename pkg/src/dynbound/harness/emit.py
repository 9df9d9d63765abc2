"""CSV and JSON output."""

from __future__ import annotations

import csv
import io
import json
import sys
from typing import Optional

from ..bounds import DEGENERATE_LHS, UncertaintyReport
from .runs import TimeTrace, TraceRow

CSV_COLUMNS = ("t", "lhs", "rhs_comm", "rhs_cs", "slack", "delta_A", "delta_dAdt", "exp_Sz")


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else format(x, ".17g")


def _to_jsonable(obj):
    if isinstance(obj, TimeTrace):
        return {"rows": [r._asdict() for r in obj.rows]}
    if hasattr(obj, "as_dict"):
        return obj.as_dict()
    return obj


def render(obj, fmt: str) -> str:
    """Serialize a TimeTrace, UncertaintyReport or any object with ``as_dict``."""
    if fmt == "json":
        return json.dumps(_to_jsonable(obj), indent=2) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(obj, UncertaintyReport):
        obj = TimeTrace((TraceRow(obj.t, obj.lhs, obj.rhs_comm, obj.rhs_cs, obj.slack,
                                  obj.delta_A, obj.delta_dAdt, None, obj.degenerate),))
    if not isinstance(obj, TimeTrace):
        raise ValueError(f"CSV output is only defined for traces and reports, not {type(obj).__name__}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in obj.rows:
        w.writerow([_fmt(getattr(r, c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def emit(obj, fmt: str = "csv", destination=None) -> None:
    """Write ``obj`` to a path, an open text stream, or stdout when ``destination`` is None."""
    text = render(obj, fmt)
    if destination is None:
        sys.stdout.write(text)
    elif hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def read_trace_csv(text: str) -> TimeTrace:
    """Parse the CSV produced by ``render``; the degenerate flag is recomputed from lhs."""
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    rows = []
    for rec in reader:
        vals = {c: (float(rec[c]) if rec[c] != "" else None) for c in CSV_COLUMNS}
        rows.append(TraceRow(**vals, degenerate=vals["lhs"] < DEGENERATE_LHS))
    return TimeTrace(tuple(rows))
