"""CSV writers for traces, summaries and sweeps.

Floats use 17 significant digits (``%.17g``), so values round-trip
exactly; missing values are empty fields.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

from ..algorithms import SolveResult

TRACE_COLUMNS = ("k", "algorithm", "level", "f_value", "grad_norm", "err_sq", "restarted", "fevals")


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, str)):
        return str(v)
    return "%.17g" % float(v)


def write_rows(path: Path, header, rows) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def trace_rows(result: SolveResult):
    for r in result.records():
        yield (r.k, result.algorithm, r.level, r.f_value, r.grad_norm,
               r.err_sq, r.restarted, r.fevals)


def write_trace(path: Path, result: SolveResult) -> None:
    write_rows(path, TRACE_COLUMNS, trace_rows(result))


def read_rows(path: Path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))
