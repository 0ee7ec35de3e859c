"""Canonical tabular output: stable columns, 9-decimal formatting.

Every CLI subcommand and figure emitter writes through here so outputs are
diff-testable: identical inputs give byte-identical tables, floats always
carry 9 decimals, and Undefined is the literal ``undefined`` - never NaN,
never an empty cell.
"""

from __future__ import annotations

import csv
import sys
from datetime import date
from pathlib import Path
from typing import Any, Iterable

UNDEFINED = "undefined"
UNBOUNDED = "unbounded"


def format_cell(value: Any) -> str:
    if value is None:
        return UNDEFINED
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.9f}"
    if isinstance(value, date):
        return value.isoformat()
    return str(value)


def write_table(
    header: list[str],
    rows: Iterable[Iterable[Any]],
    out: str | Path | None = None,
) -> None:
    """Write a CSV table to `out`, or stdout when no path is given."""
    formatted = ([format_cell(v) for v in row] for row in rows)
    if out is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(formatted)
        return
    with Path(out).open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(formatted)
