"""
Reading and preprocessing wave datasets.

Supported inputs:

* NDBC standard meteorological files (``WVHT`` column), historical and
  realtime layouts, with or without the minute column and units line.
* NDBC spectral wave density files; significant wave height is
  ``4 * sqrt(m0)`` with ``m0`` the trapezoidal integral of the spectrum.
* Hindcast CSV exports with an ISO-8601 time column and an Hs column.
  The package's own canonical CSV (``timestamp,hs_m``) is a special case.

Buoy records are brought to an hourly series with :func:`to_hourly`;
datasets are cut into a fitting period and a retained period with
:func:`split`. Periods are half-open ``[start, end)``.
"""

from __future__ import annotations

import csv
import io
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, FileFormatError
from .samples import HsSample

__all__ = [
    "HsSample",
    "Records",
    "ParseStats",
    "HourlyStats",
    "DatasetSpec",
    "parse_ndbc_met",
    "parse_ndbc_spectral",
    "to_hourly",
    "parse_hindcast_csv",
    "write_csv",
    "split",
    "load_dataset_spec",
    "load_dataset",
]

logger = logging.getLogger(__name__)

_SENTINELS = (99.0, 999.0, 9999.0)


@dataclass
class ParseStats:
    rows: int = 0
    valid: int = 0
    missing: int = 0
    malformed: int = 0
    diagnostics: list[str] = field(default_factory=list)


@dataclass
class Records:
    """Timestamped significant wave heights as read from a file, before
    hourly aggregation. Missing values are not included."""

    times: np.ndarray
    hs: np.ndarray
    stats: ParseStats = field(default_factory=ParseStats)

    def __len__(self):
        return self.hs.size

    @classmethod
    def concat(cls, parts):
        parts = list(parts)
        stats = ParseStats()
        for p in parts:
            stats.rows += p.stats.rows
            stats.valid += p.stats.valid
            stats.missing += p.stats.missing
            stats.malformed += p.stats.malformed
            stats.diagnostics.extend(p.stats.diagnostics)
        if not parts:
            return cls(np.array([], dtype="datetime64[s]"), np.array([], dtype=float), stats)
        return cls(
            np.concatenate([p.times for p in parts]).astype("datetime64[s]"),
            np.concatenate([p.hs for p in parts]),
            stats,
        )


def _open_lines(source):
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8", errors="replace") as fh:
            return fh.read().splitlines()
    if isinstance(source, io.IOBase) or hasattr(source, "read"):
        return source.read().splitlines()
    return [line.rstrip("\n") for line in source]


def _source_name(source):
    return os.fspath(source) if isinstance(source, (str, os.PathLike)) else "<stream>"


def _year(token):
    y = int(token)
    if y < 100:
        y += 2000 if y < 70 else 1900
    return y


def _ndbc_header(lines, name):
    """Column names and the index of the first data line."""
    for i, line in enumerate(lines):
        if not line.strip():
            continue
        tokens = line.split()
        first = tokens[0].lstrip("#").upper()
        if first not in ("YY", "YYYY"):
            raise FileFormatError(f"{name}: unrecognised NDBC header {line!r}")
        cols = [tokens[0].lstrip("#")] + tokens[1:]
        return cols, i + 1
    raise FileFormatError(f"{name}: file is empty")


def _time_columns(cols):
    lower = [c.lower() for c in cols]
    # historical layout before 2005 has no minute column
    has_minute = len(lower) > 4 and lower[4] == "mm"
    return 5 if has_minute else 4


def _timestamp(tokens, ntime):
    year = _year(tokens[0])
    month, day, hour = (int(t) for t in tokens[1:4])
    minute = int(tokens[4]) if ntime == 5 else 0
    return np.datetime64(f"{year:04d}-{month:02d}-{day:02d}T{hour:02d}:{minute:02d}:00", "s")


def _is_sentinel(value):
    return any(abs(value - s) < 1e-9 for s in _SENTINELS)


def parse_ndbc_met(source) -> Records:
    """Read ``WVHT`` from an NDBC standard meteorological file.

    Two-digit years below 70 map to 20xx, others to 19xx. ``99.00``, ``999``
    and ``MM`` mark missing heights; such rows are counted but not returned.

    Raises
    ------
    FileFormatError
        If the header is not an NDBC header or lacks ``WVHT``.
    """
    name = _source_name(source)
    lines = _open_lines(source)
    cols, start = _ndbc_header(lines, name)
    try:
        iw = cols.index("WVHT")
    except ValueError:
        raise FileFormatError(f"{name}: header has no WVHT column") from None
    ntime = _time_columns(cols)
    stats = ParseStats()
    times, hs = [], []
    for lineno, line in enumerate(lines[start:], start=start + 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        stats.rows += 1
        tokens = line.split()
        if len(tokens) != len(cols):
            stats.malformed += 1
            stats.diagnostics.append(f"{name}:{lineno}: expected {len(cols)} fields, got {len(tokens)}")
            continue
        try:
            t = _timestamp(tokens, ntime)
            raw = tokens[iw]
            value = np.nan if raw == "MM" else float(raw)
        except ValueError as exc:
            stats.malformed += 1
            stats.diagnostics.append(f"{name}:{lineno}: {exc}")
            continue
        if not np.isfinite(value) or _is_sentinel(value):
            stats.missing += 1
            continue
        times.append(t)
        hs.append(value)
    stats.valid = len(hs)
    if stats.malformed:
        logger.warning("%s: skipped %d malformed rows", name, stats.malformed)
    return Records(np.array(times, dtype="datetime64[s]"), np.array(hs, dtype=float), stats)


def parse_ndbc_spectral(source) -> Records:
    """Significant wave height from an NDBC spectral density file.

    The header lists the frequencies (Hz) after the date columns; each row
    holds the spectral density (m^2/Hz) at those frequencies. Rows containing
    a sentinel value are counted as missing.
    """
    name = _source_name(source)
    lines = _open_lines(source)
    cols, start = _ndbc_header(lines, name)
    ntime = _time_columns(cols)
    try:
        freqs = np.array([float(c) for c in cols[ntime:]])
    except ValueError:
        raise FileFormatError(f"{name}: frequency header is not numeric") from None
    if freqs.size < 2 or not np.all(np.diff(freqs) > 0):
        raise FileFormatError(f"{name}: frequency grid must be strictly increasing")
    stats = ParseStats()
    times, hs = [], []
    for lineno, line in enumerate(lines[start:], start=start + 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        stats.rows += 1
        tokens = line.split()
        if len(tokens) != ntime + freqs.size:
            stats.malformed += 1
            stats.diagnostics.append(f"{name}:{lineno}: expected {ntime + freqs.size} fields, got {len(tokens)}")
            continue
        try:
            t = _timestamp(tokens, ntime)
            s = np.array([float(v) for v in tokens[ntime:]])
        except ValueError as exc:
            stats.malformed += 1
            stats.diagnostics.append(f"{name}:{lineno}: {exc}")
            continue
        if np.any(~np.isfinite(s)) or any(_is_sentinel(v) for v in s):
            stats.missing += 1
            continue
        m0 = np.trapezoid(s, freqs)
        times.append(t)
        hs.append(4.0 * np.sqrt(max(m0, 0.0)))
    stats.valid = len(hs)
    return Records(np.array(times, dtype="datetime64[s]"), np.array(hs, dtype=float), stats)


@dataclass
class HourlyStats:
    records_in: int = 0
    hours_out: int = 0
    combined: int = 0
    dropped: int = 0
    missing_hours: int = 0


def to_hourly(records: Records, source_label: str = "") -> tuple[HsSample, HourlyStats]:
    """One value per clock hour.

    Several records in the same hour (30-minute sea states) are combined by
    the energy mean ``sqrt(mean(h**2))``. Non-positive or non-finite records
    are dropped first. Hours without records stay absent.
    """
    stats = HourlyStats(records_in=len(records))
    t = np.asarray(records.times, dtype="datetime64[s]")
    h = np.asarray(records.hs, dtype=float)
    keep = np.isfinite(h) & (h > 0)
    stats.dropped = int(np.count_nonzero(~keep))
    t, h = t[keep], h[keep]
    if h.size == 0:
        return HsSample(np.array([]), np.array([], dtype="datetime64[s]"), source_label), stats
    hours = t.astype("datetime64[h]")
    order = np.argsort(hours, kind="stable")
    hours, h = hours[order], h[order]
    uniq, start, counts = np.unique(hours, return_index=True, return_counts=True)
    energy = np.add.reduceat(h * h, start) / counts
    values = np.where(counts == 1, h[start], np.sqrt(energy))
    stats.hours_out = int(uniq.size)
    stats.combined = int(np.count_nonzero(counts > 1))
    span = int((uniq[-1] - uniq[0]) / np.timedelta64(1, "h")) + 1
    stats.missing_hours = span - int(uniq.size)
    return HsSample(values, uniq.astype("datetime64[s]"), source_label), stats


def _parse_time(text):
    s = text.strip()
    if s.endswith("Z"):
        s = s[:-1]
    elif s.endswith("+00:00"):
        s = s[:-6]
    return np.datetime64(s.replace(" ", "T"), "s")


def parse_hindcast_csv(
    source, time_column: str = "timestamp", hs_column: str = "hs_m", delimiter: str = ",", source_label: str = ""
) -> HsSample:
    """Read a CSV export with an ISO-8601 UTC time column and an Hs column (m).

    Rows with empty, non-finite or non-positive Hs are dropped. Rows are
    returned in time order; duplicated timestamps are an error.
    """
    name = _source_name(source)
    lines = _open_lines(source)
    reader = csv.DictReader((line for line in lines if line.strip() and not line.startswith("#")), delimiter=delimiter)
    if reader.fieldnames is None:
        raise FileFormatError(f"{name}: file is empty")
    fields_ = [f.strip() for f in reader.fieldnames]
    reader.fieldnames = fields_
    for col in (time_column, hs_column):
        if col not in fields_:
            raise FileFormatError(f"{name}: missing column {col!r} (found {fields_})")
    times, hs = [], []
    has_time = None
    for lineno, row in enumerate(reader, start=2):
        raw_h = (row.get(hs_column) or "").strip()
        raw_t = (row.get(time_column) or "").strip()
        try:
            value = float(raw_h) if raw_h else np.nan
            t = _parse_time(raw_t) if raw_t else None
        except ValueError as exc:
            raise FileFormatError(f"{name}:{lineno}: {exc}") from None
        if has_time is None:
            has_time = t is not None
        elif has_time != (t is not None):
            raise FileFormatError(f"{name}:{lineno}: timestamps must be given for all rows or none")
        if not (np.isfinite(value) and value > 0):
            continue
        times.append(t)
        hs.append(value)
    values = np.array(hs, dtype=float)
    if not has_time:
        return HsSample(values, None, source_label or name)
    ts = np.array(times, dtype="datetime64[s]")
    order = np.argsort(ts, kind="stable")
    ts, values = ts[order], values[order]
    if ts.size > 1 and np.any(np.diff(ts) == np.timedelta64(0, "s")):
        raise FileFormatError(f"{name}: duplicated timestamps")
    return HsSample(values, ts, source_label or name)


def write_csv(sample: HsSample, target) -> None:
    """Write the canonical ``timestamp,hs_m`` CSV; values round-trip exactly."""
    own = isinstance(target, (str, os.PathLike))
    fh = open(target, "w", encoding="utf-8", newline="") if own else target
    try:
        fh.write("timestamp,hs_m\n")
        ts = sample.timestamps
        for i, v in enumerate(sample.values):
            stamp = "" if ts is None else f"{np.datetime_as_string(ts[i], unit='s')}Z"
            fh.write(f"{stamp},{float(v)!r}\n")
    finally:
        if own:
            fh.close()


def _as_datetime(value):
    if value is None:
        return None
    return np.datetime64(str(value).replace(" ", "T"), "s")


@dataclass(frozen=True)
class DatasetSpec:
    """Where a dataset lives and how to cut it into fit and retained periods.

    ``kind`` is one of ``'ndbc-met'``, ``'ndbc-spectral'`` or
    ``'hindcast-csv'``. Periods are half-open ``(start, end)`` pairs of
    datetime64; ``None`` means no such period.
    """

    name: str
    kind: str
    files: tuple[Path, ...]
    fit_period: tuple[np.datetime64, np.datetime64] | None = None
    retained_period: tuple[np.datetime64, np.datetime64] | None = None
    time_column: str = "timestamp"
    hs_column: str = "hs_m"

    KINDS = ("ndbc-met", "ndbc-spectral", "hindcast-csv")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ConfigError(f"dataset {self.name}: unknown kind {self.kind!r}; expected one of {self.KINDS}")
        for label, period in (("fit", self.fit_period), ("retained", self.retained_period)):
            if period is not None and not period[0] <= period[1]:
                raise ConfigError(f"dataset {self.name}: {label} period ends before it starts")
        if self.fit_period is not None and self.retained_period is not None:
            (a0, a1), (b0, b1) = self.fit_period, self.retained_period
            if a0 < b1 and b0 < a1:
                raise ConfigError(f"dataset {self.name}: fit and retained periods overlap")


def split(sample: HsSample, spec: DatasetSpec) -> tuple[HsSample, HsSample]:
    """Partition a timestamped sample into the fit and retained periods.

    Observations outside both periods are discarded. A timestamp equal to a
    boundary belongs to the interval starting there.
    """
    if sample.timestamps is None:
        raise ConfigError(f"dataset {spec.name}: splitting needs timestamps")
    # re-validate in case the DatasetSpec was built by replace()
    DatasetSpec.__post_init__(spec)
    ts = sample.timestamps

    def take(period, label):
        if period is None:
            mask = np.ones(ts.shape, bool) if label == "fit" else np.zeros(ts.shape, bool)
        else:
            mask = (ts >= period[0]) & (ts < period[1])
        return HsSample(sample.values[mask], ts[mask], f"{spec.name}{'' if label == 'fit' else '_r'}")

    return take(spec.fit_period, "fit"), take(spec.retained_period, "retained")


def _period(raw, name, label):
    if raw is None:
        return None
    if isinstance(raw, dict):
        raw = (raw.get("start"), raw.get("end"))
    if len(raw) != 2:
        raise ConfigError(f"dataset {name}: {label} must be [start, end]")
    return _as_datetime(raw[0]), _as_datetime(raw[1])


def load_dataset_spec(path) -> dict[str, DatasetSpec]:
    """Read a YAML dataset specification file.

    Schema::

        datasets:
          A:
            kind: ndbc-met            # ndbc-met | ndbc-spectral | hindcast-csv
            files: [44007h1996.txt, 44007h1997.txt]   # relative to this file
            fit: [1996-01-01, 2006-01-01]             # half-open [start, end)
            retained: [2006-01-01, 2017-11-01]        # optional
          D:
            kind: hindcast-csv
            files: [D.csv]
            time_column: timestamp    # optional, default 'timestamp'
            hs_column: hs_m           # optional, default 'hs_m'
            fit: [1965-01-01, 1990-01-01]
            retained: [1990-01-01, 2015-01-01]
    """
    import yaml

    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read dataset spec {path}: {exc}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("datasets"), dict):
        raise ConfigError(f"{path}: expected a top-level 'datasets' mapping")
    specs = {}
    for name, entry in doc["datasets"].items():
        name = str(name)
        if not isinstance(entry, dict) or "kind" not in entry or "files" not in entry:
            raise ConfigError(f"{path}: dataset {name} needs 'kind' and 'files'")
        files = entry["files"]
        files = [files] if isinstance(files, str) else list(files)
        specs[name] = DatasetSpec(
            name=name,
            kind=str(entry["kind"]),
            files=tuple((path.parent / f) for f in files),
            fit_period=_period(entry.get("fit"), name, "fit"),
            retained_period=_period(entry.get("retained"), name, "retained"),
            time_column=str(entry.get("time_column", "timestamp")),
            hs_column=str(entry.get("hs_column", "hs_m")),
        )
    return specs


def load_dataset(spec: DatasetSpec) -> tuple[HsSample, HsSample]:
    """Read, preprocess and split a dataset into ``(fit, retained)`` samples."""
    for f in spec.files:
        if not Path(f).is_file():
            raise FileNotFoundError(f"dataset {spec.name}: file not found: {f}")
    if spec.kind == "hindcast-csv":
        parts = [parse_hindcast_csv(f, spec.time_column, spec.hs_column) for f in spec.files]
        values = np.concatenate([p.values for p in parts]) if parts else np.array([])
        if any(p.timestamps is None for p in parts):
            raise FileFormatError(f"dataset {spec.name}: hindcast files need timestamps")
        ts = np.concatenate([p.timestamps for p in parts]) if parts else np.array([], "datetime64[s]")
        order = np.argsort(ts, kind="stable")
        sample = HsSample(values[order], ts[order], spec.name)
    else:
        parser = parse_ndbc_met if spec.kind == "ndbc-met" else parse_ndbc_spectral
        records = Records.concat(parser(f) for f in spec.files)
        sample, stats = to_hourly(records, spec.name)
        logger.info("dataset %s: %s", spec.name, stats)
    return split(sample, spec)
