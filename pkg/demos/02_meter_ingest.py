#!/usr/bin/env python3
"""Ingest a smart-meter export and turn it into a clean hourly series.

Meter vendors commonly export one row per day with 24 hourly columns.
This demo builds such a file by hand, parses it, flattens it to one
chronological hourly series, drops the exact-zero readings that stand
for outages or data gaps, and round-trips the result through the long
``timestamp,kwh`` layout used everywhere else in the package.
"""

from pathlib import Path

import numpy as np

from loadcast.meter_ingest import (
    drop_zero_readings,
    load_meter_csv,
    parse_wide_csv,
    read_long_csv,
    to_hourly_series,
    write_long_csv,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# A three-day wide export. Hour columns are 1..24; hour 1 covers 00:00.
header = "Reading Date," + ",".join(str(h) for h in range(1, 25))
rng = np.random.default_rng(12)
rows = [header]
for day in ("2024-03-01", "2024-03-02", "2024-03-03"):
    loads = np.round(rng.uniform(0.2, 1.8, size=24), 3)
    loads[5] = 0.0  # a dead reading in the small hours
    rows.append(day + "," + ",".join(str(v) for v in loads))
wide_text = "\n".join(rows) + "\n"

wide_path = OUT / "wide_export.csv"
wide_path.write_text(wide_text, encoding="utf-8")

# parse_wide_csv accepts a path or the CSV text itself.
table = parse_wide_csv(wide_text)
print(f"parsed {len(table.dates)} days x 24 hourly columns")

# Flatten to a single chronological series of (timestamp, kWh) pairs.
series = to_hourly_series(table)
print(f"{len(series)} hourly readings, first is "
      f"{series.timestamps[0]} -> {series.values[0]} kWh")

# Zero readings are meter dropouts, not real demand; remove them before
# modeling so they cannot drag the scaler and the loss toward zero.
cleaned = drop_zero_readings(series)
print(f"dropped {len(series) - len(cleaned)} zero readings, kept {len(cleaned)}")

# Store the cleaned series in the long layout; floats are written with
# repr so reading them back is bit-exact.
long_path = OUT / "clean_long.csv"
write_long_csv(cleaned, long_path)
reread = read_long_csv(long_path)
assert np.array_equal(reread.values, cleaned.values)
print(f"wrote {long_path} and re-read it bit-exactly")

# load_meter_csv sniffs the header, so both layouts load the same way.
assert len(load_meter_csv(wide_path)) == 72
assert len(load_meter_csv(long_path)) == len(cleaned)
print("load_meter_csv handles both the wide and the long layout")
