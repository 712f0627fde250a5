"""The significant wave height sample container."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, EmptyInputError


@dataclass(frozen=True, eq=False)
class HsSample:
    """Ordered collection of significant wave height observations.

    Parameters
    ----------
    values : array_like
        Significant wave height in meters, in observation order.
    timestamps : array_like of datetime64, optional
        UTC instants, one per value, strictly increasing.
    source_label : str
        Free text describing where the data came from.
    """

    values: np.ndarray
    timestamps: np.ndarray | None = None
    source_label: str = ""
    _sorted: np.ndarray | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).ravel()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.timestamps is not None:
            ts = np.asarray(self.timestamps, dtype="datetime64[s]").ravel()
            if ts.shape != values.shape:
                raise ValueError(
                    f"timestamps length {ts.size} does not match values length {values.size}"
                )
            if ts.size > 1 and not np.all(np.diff(ts) > np.timedelta64(0, "s")):
                raise ValueError("timestamps must be strictly increasing")
            ts.setflags(write=False)
            object.__setattr__(self, "timestamps", ts)

    def __len__(self):
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.values
        return self.values.astype(dtype)

    def sorted(self) -> np.ndarray:
        """Values in ascending order (cached, stable sort)."""
        if self._sorted is None:
            s = np.sort(self.values, kind="stable")
            s.setflags(write=False)
            object.__setattr__(self, "_sorted", s)
        return self._sorted

    def validate_positive(self) -> None:
        if self.values.size == 0:
            raise EmptyInputError("sample is empty")
        if not np.all(np.isfinite(self.values)) or np.any(self.values <= 0):
            raise DomainError("sample values must be finite and > 0")

    def __repr__(self):
        label = f", source_label={self.source_label!r}" if self.source_label else ""
        return f"HsSample(n={len(self)}{label})"


def as_values(sample) -> np.ndarray:
    """Return the observation vector of an HsSample or array-like as a float array."""
    if isinstance(sample, HsSample):
        return sample.values
    return np.asarray(sample, dtype=float).ravel()


def sorted_values(sample) -> np.ndarray:
    if isinstance(sample, HsSample):
        return sample.sorted()
    return np.sort(np.asarray(sample, dtype=float).ravel(), kind="stable")
