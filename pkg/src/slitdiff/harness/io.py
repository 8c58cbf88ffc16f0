"""CSV/JSON serialization of patterns, comparison reports and sweep tables.

Floats are written as the shortest decimal string that round-trips to the
same binary64 value (Python's ``repr``), so files are lossless and stable.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, List, Sequence

import numpy as np

from ..core import AngleGrid, ComparisonReport, Pattern

PATTERN_HEADER = ("theta_rad", "sin_theta", "k_y", "re_amp", "im_amp", "intensity")
REPORT_HEADER = (
    "method_a", "method_b", "lambda_over_a", "theta_max_rad",
    "max_abs_deviation", "rms_deviation",
)


def fmt(value) -> str:
    return repr(float(value))


def _write_rows(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def pattern_rows(p: Pattern) -> List[List[str]]:
    sin_theta = p.grid.sin_theta
    k_y = p.k * sin_theta
    return [
        [fmt(t), fmt(s), fmt(ky), fmt(a.real), fmt(a.imag), fmt(i)]
        for t, s, ky, a, i in zip(p.grid.thetas, sin_theta, k_y, p.amplitudes, p.intensities)
    ]


def write_pattern_csv(p: Pattern, path) -> None:
    _write_rows(path, PATTERN_HEADER, pattern_rows(p))


def read_pattern_csv(path, method: str, normalization="raw", k: float = float("nan")) -> Pattern:
    """Rebuild a :class:`Pattern` from a file written by :func:`write_pattern_csv`.

    The CSV does not store method name, normalization or wavenumber, so the
    caller supplies them.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != PATTERN_HEADER:
            raise ValueError(f"unexpected pattern header {header!r}")
        rows = [[float(v) for v in row] for row in reader]
    data = np.array(rows, dtype=float).reshape(-1, len(PATTERN_HEADER))
    return Pattern(
        method=method,
        grid=AngleGrid(data[:, 0]),
        amplitudes=data[:, 3] + 1j * data[:, 4],
        intensities=data[:, 5],
        normalization=normalization,
        k=k,
    )


def pattern_to_dict(p: Pattern) -> dict:
    return {
        "method": p.method,
        "normalization": p.normalization.value,
        "k": float(p.k),
        "columns": list(PATTERN_HEADER),
        "rows": [[float(v) for v in row] for row in pattern_rows(p)],
    }


def pattern_from_dict(d: dict) -> Pattern:
    data = np.array(d["rows"], dtype=float).reshape(-1, len(PATTERN_HEADER))
    return Pattern(
        method=d["method"],
        grid=AngleGrid(data[:, 0]),
        amplitudes=data[:, 3] + 1j * data[:, 4],
        intensities=data[:, 5],
        normalization=d["normalization"],
        k=d["k"],
    )


def write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=1, allow_nan=True) + "\n", encoding="utf-8")


def write_patterns_json(patterns: Sequence[Pattern], path) -> None:
    write_json({"patterns": [pattern_to_dict(p) for p in patterns]}, path)


def report_row(r: ComparisonReport) -> List[str]:
    return [
        r.method_pair[0], r.method_pair[1], fmt(r.lambda_over_a), fmt(r.theta_max),
        fmt(r.max_abs_deviation), fmt(r.rms_deviation),
    ]


def write_reports_csv(reports: Sequence[ComparisonReport], path) -> None:
    _write_rows(path, REPORT_HEADER, [report_row(r) for r in reports])


def report_to_dict(r: ComparisonReport) -> dict:
    return {
        "method_pair": list(r.method_pair),
        "lambda_over_a": r.lambda_over_a,
        "theta_max_rad": r.theta_max,
        "samples": len(r.grid),
        "max_abs_deviation": r.max_abs_deviation,
        "rms_deviation": r.rms_deviation,
    }


def write_reports_json(reports: Sequence[ComparisonReport], path) -> None:
    write_json({"reports": [report_to_dict(r) for r in reports]}, path)


def write_table_csv(header: Sequence[str], rows: Iterable[Sequence], path) -> None:
    """Generic table; floats are formatted, strings and ints pass through."""
    def cell(v):
        if isinstance(v, (float, np.floating)):
            return fmt(v)
        return str(v)
    _write_rows(path, header, [[cell(v) for v in row] for row in rows])


def write_table_json(header: Sequence[str], rows: Iterable[Sequence], path) -> None:
    def cell(v):
        if isinstance(v, (float, np.floating)):
            return None if math.isnan(v) else float(v)
        if isinstance(v, np.integer):
            return int(v)
        return v
    write_json({"rows": [dict(zip(header, map(cell, row))) for row in rows]}, path)
