"""Synthetic household-load generator.

Real hourly smart-meter data is rarely shareable, so the workbench ships a
stand-in: a flat overnight base load with morning and evening usage bumps,
Gaussian measurement noise, and occasional appliance spikes. Values are
clipped at zero, which leaves a scattering of exact-zero readings — the
same artifact the cleaning stage removes from real meter exports.

Generation is deterministic per profile: all draws come from the ``synth``
substream of the profile's seed, in a fixed order (noise first, then spike
positions).
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, datetime, timedelta

import numpy as np

from .meter_ingest import MeterSeries
from .seeding import substream


@dataclass(frozen=True)
class SynthProfile:
    """Knobs of the generator; defaults give ~3 months of plausible kWh."""

    days: int = 88
    base_load: float = 0.4  # kWh drawn every hour regardless of activity
    morning_amplitude: float = 1.1  # kWh added at the morning peak
    morning_hour: float = 7.0
    evening_amplitude: float = 1.5  # kWh added at the evening peak
    evening_hour: float = 19.0
    peak_width: float = 2.0  # Gaussian bump width, in hours
    noise_std: float = 0.22
    spike_probability: float = 0.02  # per-hour chance of an appliance spike
    spike_amplitude: float = 1.8
    seed: int = 42
    start: date = date(2024, 1, 1)

    def __post_init__(self):
        if self.days < 1:
            raise ValueError(f"days must be >= 1; got {self.days}")
        for name in (
            "base_load",
            "morning_amplitude",
            "evening_amplitude",
            "noise_std",
            "spike_amplitude",
        ):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0; got {getattr(self, name)}")
        for name in ("morning_hour", "evening_hour"):
            if not 0.0 <= getattr(self, name) < 24.0:
                raise ValueError(f"{name} must be in [0, 24); got {getattr(self, name)}")
        if self.peak_width <= 0:
            raise ValueError(f"peak_width must be > 0; got {self.peak_width}")
        if not 0.0 <= self.spike_probability <= 1.0:
            raise ValueError(
                f"spike_probability must be in [0, 1]; got {self.spike_probability}"
            )


def daily_pattern(profile: SynthProfile) -> np.ndarray:
    """The noise-free 24-hour consumption template."""
    hours = np.arange(24, dtype=np.float64)
    pattern = np.full(24, profile.base_load)
    for amplitude, center in (
        (profile.morning_amplitude, profile.morning_hour),
        (profile.evening_amplitude, profile.evening_hour),
    ):
        pattern += amplitude * np.exp(-0.5 * ((hours - center) / profile.peak_width) ** 2)
    return pattern


def synth_household(profile: SynthProfile = SynthProfile()) -> MeterSeries:
    """Generate ``profile.days`` days of hourly readings, clipped at zero."""
    n = profile.days * 24
    pattern = np.tile(daily_pattern(profile), profile.days)
    rng = substream(profile.seed, "synth")
    noise = rng.normal(0.0, profile.noise_std, size=n)
    spikes = rng.random(n) < profile.spike_probability
    values = np.clip(pattern + noise + spikes * profile.spike_amplitude, 0.0, None)
    first = datetime(profile.start.year, profile.start.month, profile.start.day)
    stamps = tuple(first + timedelta(hours=h) for h in range(n))
    return MeterSeries(stamps, values)
