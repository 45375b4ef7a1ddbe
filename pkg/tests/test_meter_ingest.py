"""Meter CSV ingestion tests.

Covers: wide-table parsing and validation, the hour-column mapping,
transposition to an hourly series, point-wise zero removal, and the
bit-exact long-CSV round trip.
"""

import datetime

import numpy as np
import pytest

from loadcast.errors import MeterFormatError
from loadcast.meter_ingest import (
    MeterSeries,
    drop_zero_readings,
    load_meter_csv,
    parse_wide_csv,
    read_long_csv,
    to_hourly_series,
    write_long_csv,
)

WIDE_HEADER = "Reading Date," + ",".join(str(h) for h in range(1, 25))


def wide_text(rows):
    return WIDE_HEADER + "\n" + "\n".join(rows) + "\n"


def day_row(day, values):
    return day + "," + ",".join(str(v) for v in values)


class TestParseWideCsv:
    def test_parses_dates_and_shape(self):
        text = wide_text(
            [
                day_row("2021-01-17", [0.1 * h for h in range(24)]),
                day_row("2021-01-18", [0.2 * h for h in range(24)]),
            ]
        )
        table = parse_wide_csv(text)
        assert table.dates == (datetime.date(2021, 1, 17), datetime.date(2021, 1, 18))
        assert table.values.shape == (2, 24)
        assert table.values.dtype == np.float64
        assert table.values[1, 3] == pytest.approx(0.6)

    def test_reads_from_path(self, tmp_path):
        path = tmp_path / "wide.csv"
        path.write_text(wide_text([day_row("2021-01-17", range(24))]))
        table = parse_wide_csv(str(path))
        assert table.values.shape == (1, 24)

    def test_rejects_bad_header(self):
        bad = wide_text([day_row("2021-01-17", range(24))]).replace("Reading Date", "Date")
        with pytest.raises(MeterFormatError, match="header"):
            parse_wide_csv(bad)

    def test_rejects_reordered_hour_columns(self):
        text = wide_text([day_row("2021-01-17", range(24))])
        swapped = text.replace(",1,2,", ",2,1,", 1)
        with pytest.raises(MeterFormatError, match="header"):
            parse_wide_csv(swapped)

    def test_rejects_non_iso_date(self):
        with pytest.raises(MeterFormatError, match="ISO"):
            parse_wide_csv(wide_text([day_row("17/01/2021", range(24))]))

    def test_rejects_duplicate_date(self):
        text = wide_text(
            [day_row("2021-01-17", range(24)), day_row("2021-01-17", range(24))]
        )
        with pytest.raises(MeterFormatError, match="duplicate"):
            parse_wide_csv(text)

    def test_rejects_non_numeric_cell(self):
        values = list(range(23)) + ["n/a"]
        with pytest.raises(MeterFormatError, match="non-numeric"):
            parse_wide_csv(wide_text([day_row("2021-01-17", values)]))

    def test_rejects_short_row(self):
        with pytest.raises(MeterFormatError, match="25 cells"):
            parse_wide_csv(wide_text([day_row("2021-01-17", range(23))]))

    def test_rejects_empty_input(self):
        with pytest.raises(MeterFormatError):
            parse_wide_csv(WIDE_HEADER + "\n")


class TestToHourlySeries:
    def test_hour_column_h_is_hour_h_minus_one(self):
        # hour column 1 -> 00:00, column 24 -> 23:00 of the same date
        table = parse_wide_csv(wide_text([day_row("2021-01-17", range(24))]))
        series = to_hourly_series(table)
        assert len(series) == 24
        assert series.timestamps[0] == datetime.datetime(2021, 1, 17, 0, 0)
        assert series.timestamps[23] == datetime.datetime(2021, 1, 17, 23, 0)
        # column value h-1 was stored under header h, lands at hour h-1
        assert series.values[0] == 0.0
        assert series.values[23] == 23.0

    def test_days_sorted_chronologically(self):
        table = parse_wide_csv(
            wide_text(
                [
                    day_row("2021-01-18", [1.0] * 24),
                    day_row("2021-01-17", [2.0] * 24),
                ]
            )
        )
        series = to_hourly_series(table)
        assert series.timestamps[0].date() == datetime.date(2021, 1, 17)
        assert series.values[0] == 2.0
        assert series.values[24] == 1.0
        steps = {
            series.timestamps[i + 1] - series.timestamps[i]
            for i in range(len(series) - 1)
        }
        assert steps == {datetime.timedelta(hours=1)}


class TestDropZeroReadings:
    def test_drops_only_exact_zeros(self):
        stamps = tuple(
            datetime.datetime(2021, 1, 17, 0) + datetime.timedelta(hours=i)
            for i in range(5)
        )
        series = MeterSeries(stamps, np.array([0.5, 0.0, 0.001, 0.0, 2.0]))
        cleaned = drop_zero_readings(series)
        assert len(cleaned) == 3
        assert list(cleaned.values) == [0.5, 0.001, 2.0]
        assert cleaned.timestamps == (stamps[0], stamps[2], stamps[4])

    def test_noop_without_zeros(self):
        stamps = (datetime.datetime(2021, 1, 17, 0),)
        series = MeterSeries(stamps, np.array([1.5]))
        assert list(drop_zero_readings(series).values) == [1.5]


class TestLongCsvRoundTrip:
    def test_round_trip_is_bit_exact(self, tmp_path):
        rng = np.random.default_rng(7)
        values = rng.uniform(0.0, 3.5, size=200)
        # awkward representations must survive: repr round-trips doubles
        values[0] = 0.1 + 0.2
        values[1] = 1e-17
        stamps = tuple(
            datetime.datetime(2021, 1, 17, 0) + datetime.timedelta(hours=i)
            for i in range(200)
        )
        series = MeterSeries(stamps, values)
        path = tmp_path / "series.csv"
        write_long_csv(series, str(path))
        back = read_long_csv(str(path))
        assert back.timestamps == series.timestamps
        assert np.array_equal(back.values, series.values)

    def test_header_and_stamp_format(self, tmp_path):
        stamps = (datetime.datetime(2021, 1, 17, 5),)
        path = tmp_path / "one.csv"
        write_long_csv(MeterSeries(stamps, np.array([1.25])), str(path))
        lines = path.read_text().splitlines()
        assert lines[0] == "timestamp,kwh"
        assert lines[1] == "2021-01-17 05:00,1.25"

    def test_rejects_off_hour_stamp(self):
        with pytest.raises(MeterFormatError, match="on the hour"):
            read_long_csv("timestamp,kwh\n2021-01-17 05:30,1.0\n")

    def test_rejects_bad_header(self):
        with pytest.raises(MeterFormatError, match="header"):
            read_long_csv("time,load\n2021-01-17 05:00,1.0\n")

    def test_rejects_non_numeric_value(self):
        with pytest.raises(MeterFormatError, match="non-numeric"):
            read_long_csv("timestamp,kwh\n2021-01-17 05:00,abc\n")


class TestLoadMeterCsv:
    def test_sniffs_both_layouts(self, tmp_path):
        wide = tmp_path / "wide.csv"
        wide.write_text(wide_text([day_row("2021-01-17", range(24))]))
        as_wide = load_meter_csv(str(wide))
        assert len(as_wide) == 24

        long_path = tmp_path / "long.csv"
        write_long_csv(as_wide, str(long_path))
        as_long = load_meter_csv(str(long_path))
        assert as_long.timestamps == as_wide.timestamps
        assert np.array_equal(as_long.values, as_wide.values)

    def test_missing_file_raises_oserror(self, tmp_path):
        with pytest.raises(OSError):
            load_meter_csv(str(tmp_path / "nope.csv"))
