"""Bootstrap standard errors of fitted distribution parameters."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BootstrapUnstableError, EmptyInputError, WavedistError
from .estimation import FitReport, WeightScheme, fit
from .samples import as_values

__all__ = ["BootstrapConfig", "BootstrapResult", "Estimator", "bootstrap_se", "resample_indices"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BootstrapConfig:
    """Number of resamples ``B`` and the master seed."""

    B: int = 100
    seed: int = 0
    min_success_fraction: float = 0.9

    def __post_init__(self):
        if self.B < 2:
            raise ValueError(f"B must be >= 2, got {self.B}")


@dataclass(frozen=True)
class Estimator:
    """A fit procedure: family, method and (for WLS) weight scheme."""

    family: str = "exp-weibull"
    method: str = "wls"
    scheme: WeightScheme | None = None

    def __call__(self, sample) -> FitReport:
        return fit(sample, self.family, self.method, self.scheme)


@dataclass(frozen=True)
class BootstrapResult:
    stderr: np.ndarray
    estimates: np.ndarray
    n_failed: int
    B: int


def resample_indices(n: int, seed: int, index: int) -> np.ndarray:
    """Indices of resample ``index``; depends only on ``(seed, index)``."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    return rng.integers(0, n, size=n)


def _as_vector(result) -> np.ndarray:
    if isinstance(result, FitReport):
        return result.params.to_array()
    if hasattr(result, "to_array"):
        return result.to_array()
    return np.asarray(result, dtype=float)


def bootstrap_se(sample, estimator, config: BootstrapConfig = BootstrapConfig(), max_workers: int = 1) -> BootstrapResult:
    """Standard deviation of each parameter across fits to resamples drawn with replacement.

    Parameters
    ----------
    sample : HsSample or array_like
    estimator : callable
        Maps a sample to a FitReport (e.g. :class:`Estimator`), a parameter
        object or a parameter vector.
    config : BootstrapConfig
    max_workers : int
        Threads used for refitting. Results do not depend on this value.

    Raises
    ------
    BootstrapUnstableError
        If more than ``1 - config.min_success_fraction`` of the refits fail.
    """
    x = as_values(sample)
    if x.size == 0:
        raise EmptyInputError("cannot bootstrap an empty sample")

    def one(i):
        try:
            return _as_vector(estimator(x[resample_indices(x.size, config.seed, i)]))
        except WavedistError as exc:
            logger.debug("bootstrap resample %d failed: %s", i, exc)
            return None

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = list(pool.map(one, range(config.B)))
    else:
        results = [one(i) for i in range(config.B)]

    ok = [r for r in results if r is not None]
    n_failed = config.B - len(ok)
    if len(ok) < config.min_success_fraction * config.B or len(ok) < 2:
        raise BootstrapUnstableError(
            f"{n_failed} of {config.B} bootstrap refits failed", n_failed=n_failed, n_total=config.B
        )
    if n_failed:
        logger.info("%d of %d bootstrap refits failed and were skipped", n_failed, config.B)
    estimates = np.vstack(ok)
    return BootstrapResult(stderr=estimates.std(axis=0, ddof=1), estimates=estimates, n_failed=n_failed, B=config.B)
