"""Hourly smart-meter CSV ingestion.

Two on-disk layouts are supported:

* the *wide* export one row per day: header ``Reading Date,1,2,...,24``
  where hour column ``h`` holds the kWh reading for hour ``h-1`` of that
  row's date (column ``1`` is 00:00, column ``24`` is 23:00);
* the *long* layout one row per hour: header ``timestamp,kwh`` with
  ``YYYY-MM-DD HH:00`` stamps. Values are written with ``repr`` so a
  write/read round trip is bit-exact.

Zero readings are metering artifacts in this data and are dropped
point-wise (not whole days) by :func:`drop_zero_readings`.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from datetime import date, datetime, timedelta

import numpy as np

from .errors import MeterFormatError

_WIDE_FIRST_HEADER = "Reading Date"
_LONG_HEADER = ("timestamp", "kwh")
_STAMP_FORMAT = "%Y-%m-%d %H:%M"


@dataclass(frozen=True)
class WideMeterTable:
    """One row per day: ``dates[i]`` with 24 hourly readings ``values[i]``."""

    dates: tuple[date, ...]
    values: np.ndarray  # shape (n_days, 24), float64

    def __post_init__(self):
        if self.values.ndim != 2 or self.values.shape != (len(self.dates), 24):
            raise MeterFormatError(
                f"wide table needs values of shape (n_days, 24); got {self.values.shape}"
            )


@dataclass(frozen=True)
class MeterSeries:
    """Chronological hourly readings: parallel timestamps and kWh values."""

    timestamps: tuple[datetime, ...]
    values: np.ndarray  # shape (n,), float64

    def __post_init__(self):
        if self.values.ndim != 1 or len(self.values) != len(self.timestamps):
            raise MeterFormatError(
                "series needs one value per timestamp; got "
                f"{len(self.timestamps)} stamps and shape {self.values.shape}"
            )

    def __len__(self) -> int:
        return len(self.values)


def _parse_iso_date(text: str, line_no: int) -> date:
    try:
        return date.fromisoformat(text.strip())
    except ValueError:
        raise MeterFormatError(
            f"line {line_no}: reading date {text!r} is not an ISO YYYY-MM-DD date"
        ) from None


def parse_wide_csv(source: str) -> WideMeterTable:
    """Parse a wide daily export from a path or from CSV text.

    ``source`` holding a newline is treated as CSV text, otherwise as a
    path. Header must be exactly ``Reading Date,1,...,24``; each row needs
    an ISO date (no duplicates) and 24 numeric cells.
    """
    if not isinstance(source, str):
        source = os.fspath(source)
    if "\n" in source:
        handle = io.StringIO(source)
        rows = list(csv.reader(handle))
    else:
        with open(source, newline="", encoding="utf-8") as handle:
            rows = list(csv.reader(handle))
    if not rows:
        raise MeterFormatError("empty meter CSV")

    header = [cell.strip() for cell in rows[0]]
    expected = [_WIDE_FIRST_HEADER] + [str(h) for h in range(1, 25)]
    if header != expected:
        raise MeterFormatError(
            f"wide header must be {','.join(expected)!r}; got {','.join(header)!r}"
        )

    dates: list[date] = []
    seen: set[date] = set()
    values = []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 25:
            raise MeterFormatError(
                f"line {line_no}: expected 25 cells (date + 24 readings); got {len(row)}"
            )
        day = _parse_iso_date(row[0], line_no)
        if day in seen:
            raise MeterFormatError(f"line {line_no}: duplicate reading date {day.isoformat()}")
        seen.add(day)
        try:
            readings = [float(cell) for cell in row[1:]]
        except ValueError:
            bad = next(cell for cell in row[1:] if not _is_float(cell))
            raise MeterFormatError(
                f"line {line_no}: non-numeric reading {bad!r}"
            ) from None
        dates.append(day)
        values.append(readings)

    if not dates:
        raise MeterFormatError("wide meter CSV has a header but no data rows")
    return WideMeterTable(tuple(dates), np.asarray(values, dtype=np.float64))


def _is_float(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def to_hourly_series(table: WideMeterTable) -> MeterSeries:
    """Flatten a wide table into one chronological hourly series.

    Hour column ``h`` becomes hour ``h-1`` of the same date, so each day
    contributes stamps 00:00 through 23:00 in order. Days are sorted by
    date first.
    """
    order = np.argsort([d.toordinal() for d in table.dates], kind="stable")
    stamps: list[datetime] = []
    for idx in order:
        day = table.dates[idx]
        base = datetime(day.year, day.month, day.day)
        stamps.extend(base + timedelta(hours=h) for h in range(24))
    values = table.values[order].reshape(-1)
    return MeterSeries(tuple(stamps), np.ascontiguousarray(values, dtype=np.float64))


def drop_zero_readings(series: MeterSeries) -> MeterSeries:
    """Return the series with exact-zero readings removed point-wise."""
    keep = series.values != 0.0
    stamps = tuple(ts for ts, k in zip(series.timestamps, keep) if k)
    return MeterSeries(stamps, series.values[keep])


def write_long_csv(series: MeterSeries, path: str) -> None:
    """Write ``timestamp,kwh`` rows; values use ``repr`` for exact re-reads."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        handle.write(",".join(_LONG_HEADER) + "\n")
        for ts, value in zip(series.timestamps, series.values):
            handle.write(f"{ts.strftime(_STAMP_FORMAT)},{float(value)!r}\n")


def read_long_csv(source) -> MeterSeries:
    """Read a ``timestamp,kwh`` CSV from a path or from CSV text."""
    if not isinstance(source, str):
        source = os.fspath(source)
    if "\n" in source:
        handle = io.StringIO(source)
        rows = list(csv.reader(handle))
    else:
        with open(source, newline="", encoding="utf-8") as handle:
            rows = list(csv.reader(handle))
    if not rows:
        raise MeterFormatError("empty meter CSV")
    header = tuple(cell.strip() for cell in rows[0])
    if header != _LONG_HEADER:
        raise MeterFormatError(
            f"long header must be {','.join(_LONG_HEADER)!r}; got {','.join(header)!r}"
        )
    stamps: list[datetime] = []
    values: list[float] = []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 2:
            raise MeterFormatError(f"line {line_no}: expected 2 cells; got {len(row)}")
        try:
            stamp = datetime.strptime(row[0].strip(), _STAMP_FORMAT)
        except ValueError:
            raise MeterFormatError(
                f"line {line_no}: timestamp {row[0]!r} is not YYYY-MM-DD HH:MM"
            ) from None
        if stamp.minute != 0:
            raise MeterFormatError(
                f"line {line_no}: timestamp {row[0]!r} is not on the hour"
            )
        try:
            values.append(float(row[1]))
        except ValueError:
            raise MeterFormatError(f"line {line_no}: non-numeric reading {row[1]!r}") from None
        stamps.append(stamp)
    if not stamps:
        raise MeterFormatError("long meter CSV has a header but no data rows")
    return MeterSeries(tuple(stamps), np.asarray(values, dtype=np.float64))


def load_meter_csv(path: str) -> MeterSeries:
    """Load either layout from ``path``, sniffing the header line."""
    with open(path, newline="", encoding="utf-8") as handle:
        first = handle.readline()
    if first.split(",", 1)[0].strip() == _WIDE_FIRST_HEADER:
        return to_hourly_series(parse_wide_csv(path))
    return read_long_csv(path)
