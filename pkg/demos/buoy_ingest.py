"""
Reading NDBC buoy files
=======================

Standard meteorological files provide ``WVHT`` directly; spectral files give
the wave energy density from which Hs = 4 sqrt(m0). Half-hourly records are
combined into hourly sea states by their energy mean.
"""

from pathlib import Path

from wavedist.ingest import parse_ndbc_met, parse_ndbc_spectral, to_hourly

data = Path(__file__).resolve().parents[1] / "tests" / "data"

records = parse_ndbc_met(data / "met_realtime.txt")
print(f"rows {records.stats.rows}, valid {records.stats.valid}, missing {records.stats.missing}")
for t, h in zip(records.times, records.hs):
    print("  ", t, h)

hourly, stats = to_hourly(records, "buoy")
print(f"\n{stats.hours_out} hourly sea states, {stats.combined} combined, {stats.missing_hours} hours without data")
for t, h in zip(hourly.timestamps, hourly.values):
    print(f"   {t}  {h:.4f} m")

spectral = parse_ndbc_spectral(data / "spectral.txt")
print("\nHs from spectra:", [round(float(h), 4) for h in spectral.hs])
