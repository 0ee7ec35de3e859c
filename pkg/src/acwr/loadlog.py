"""Load-log CSV ingestion and serialization.

The file format is one row per athlete-day with the header
``athlete_id,date,load,planned``: ISO dates, nonnegative decimal loads, and
planned 0/1 separating realized rows from planned-schedule rows. Gaps in a
series are imputed as load 0 and flagged; the parse report lists every
imputation so nothing is filled in silently.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

from .timeseries import WorkloadSeries

HEADER = ["athlete_id", "date", "load", "planned"]


class LoadLogError(ValueError):
    """Malformed load-log input; the message carries the line number."""


@dataclass(frozen=True)
class AthleteLog:
    """Realized and (optionally) planned series for one athlete."""

    athlete_id: str
    realized: WorkloadSeries | None
    planned: WorkloadSeries | None


@dataclass(frozen=True)
class ParseReport:
    rows: int
    athletes: int
    imputations: tuple[tuple[str, date, bool], ...]  # (athlete, day, planned?)

    @property
    def imputed_days(self) -> int:
        return len(self.imputations)


@dataclass(frozen=True)
class IngestResult:
    logs: dict[str, AthleteLog] = field(default_factory=dict)
    report: ParseReport = ParseReport(0, 0, ())

    def realized_series(self) -> list[WorkloadSeries]:
        return [l.realized for l in self.logs.values() if l.realized is not None]


def _parse_load(raw: str, line: int) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise LoadLogError(f"line {line}: load {raw!r} is not a number") from None
    if not math.isfinite(value) or value < 0:
        raise LoadLogError(f"line {line}: load must be a finite nonnegative number, got {raw!r}")
    return value


def _parse_date(raw: str, line: int) -> date:
    try:
        return date.fromisoformat(raw)
    except ValueError:
        raise LoadLogError(f"line {line}: date {raw!r} is not an ISO calendar day") from None


def ingest(path: str | Path) -> IngestResult:
    """Parse a load log into per-athlete (realized, planned) series.

    Rejects malformed rows and duplicate athlete-day-plan keys with the
    offending line number; never repairs bad input.
    """
    path = Path(path)
    rows: dict[tuple[str, bool], list[tuple[date, float]]] = {}
    seen: set[tuple[str, date, bool]] = set()
    n_rows = 0

    with path.open(newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise LoadLogError("empty file") from None
        if [h.strip() for h in header] != HEADER:
            raise LoadLogError(
                f"line 1: expected header {','.join(HEADER)!r}, got {','.join(header)!r}"
            )
        for line, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 4:
                raise LoadLogError(f"line {line}: expected 4 fields, got {len(row)}")
            athlete = row[0].strip()
            if not athlete:
                raise LoadLogError(f"line {line}: empty athlete_id")
            day = _parse_date(row[1].strip(), line)
            load = _parse_load(row[2].strip(), line)
            flag = row[3].strip()
            if flag not in ("0", "1"):
                raise LoadLogError(f"line {line}: planned flag must be 0 or 1, got {flag!r}")
            planned = flag == "1"
            key = (athlete, day, planned)
            if key in seen:
                raise LoadLogError(
                    f"line {line}: duplicate {'planned' if planned else 'realized'} "
                    f"entry for {athlete} on {day}"
                )
            seen.add(key)
            rows.setdefault((athlete, planned), []).append((day, load))
            n_rows += 1

    logs: dict[str, AthleteLog] = {}
    imputations: list[tuple[str, date, bool]] = []
    athletes = sorted({athlete for athlete, _ in rows})
    for athlete in athletes:
        series: dict[bool, WorkloadSeries | None] = {False: None, True: None}
        for planned in (False, True):
            entries = rows.get((athlete, planned))
            if not entries:
                continue
            s = WorkloadSeries.from_entries(athlete, entries)
            series[planned] = s
            for d, flagged in zip(s.dates(), s.imputed):
                if flagged:
                    imputations.append((athlete, d, planned))
        logs[athlete] = AthleteLog(athlete, series[False], series[True])

    report = ParseReport(n_rows, len(athletes), tuple(imputations))
    return IngestResult(logs, report)


def write_load_log(result_or_logs: IngestResult | list[AthleteLog], path: str | Path) -> None:
    """Serialize athlete logs back to the CSV format.

    Imputed days are skipped (they had no source row), so ingest -> write ->
    ingest reproduces the original series, imputation flags included.
    """
    logs = (
        list(result_or_logs.logs.values())
        if isinstance(result_or_logs, IngestResult)
        else result_or_logs
    )
    with Path(path).open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(HEADER)
        for log in sorted(logs, key=lambda l: l.athlete_id):
            for planned, series in ((False, log.realized), (True, log.planned)):
                if series is None:
                    continue
                for (d, load), imputed in zip(series.entries(), series.imputed):
                    if imputed:
                        continue
                    writer.writerow([log.athlete_id, d.isoformat(), repr(load), int(planned)])
