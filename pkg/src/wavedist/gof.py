"""
Goodness of fit: mean absolute errors between ordered observations and model
quantiles, 1-year and 50-year return values, and the series behind QQ,
tail-density and Weibull probability paper plots.

All functions take a sample (HsSample or array_like; it is sorted internally)
and a fitted parameter object from :mod:`wavedist.distributions`.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .distributions import DistributionParams
from .errors import DomainError, EmptyInputError, InsufficientDataError, InsufficientTailError
from .estimation import plotting_positions
from .samples import sorted_values

__all__ = [
    "HOURS_PER_YEAR",
    "GofReport",
    "QQSeries",
    "ProbabilityPaperSeries",
    "TailDensitySeries",
    "mae_overall",
    "mae_tail",
    "exceedance_probability",
    "return_value",
    "empirical_return_value",
    "normalized_return_value",
    "gof_report",
    "qq_series",
    "probability_paper_series",
    "tail_density_series",
]

#: Hourly sea states per year, 365.25 * 24.
HOURS_PER_YEAR = 365.25 * 24


def _sorted(sample) -> np.ndarray:
    x = np.asarray(sorted_values(sample), dtype=float)
    if x.size == 0:
        raise EmptyInputError("sample is empty")
    return x


def _abs_errors(x, params):
    return np.abs(x - params.icdf(plotting_positions(x.size)))


def mae_overall(sample, params: DistributionParams) -> float:
    """Mean absolute error between all ordered observations and model quantiles."""
    x = _sorted(sample)
    return float(np.mean(_abs_errors(x, params)))


def _first_index_above(p, threshold):
    j = int(np.searchsorted(p, threshold, side="right"))
    if j >= p.size:
        raise InsufficientTailError(f"no plotting position exceeds {threshold}")
    return j


def mae_tail(sample, params: DistributionParams, threshold: float = 0.99) -> float:
    """Mean absolute error over the ordered observations with ``p_i > threshold``."""
    if not 0 < threshold < 1:
        raise DomainError(f"threshold must lie in (0, 1), got {threshold}")
    x = _sorted(sample)
    p = plotting_positions(x.size)
    j = _first_index_above(p, threshold)
    return float(np.mean(np.abs(x[j:] - params.icdf(p[j:]))))


def exceedance_probability(return_period_years: float) -> float:
    """Per-sea-state exceedance probability of a return period, in hourly states."""
    if not return_period_years >= 1 / HOURS_PER_YEAR:
        raise DomainError(f"return period must be at least one hour, got {return_period_years} years")
    return 1.0 / (return_period_years * HOURS_PER_YEAR)


def _empirical_index(n, return_period_years):
    p = plotting_positions(n)
    target = 1.0 - exceedance_probability(return_period_years)
    j = int(np.searchsorted(p, target, side="right"))
    if j >= n:
        raise InsufficientDataError(
            f"a sample of {n} sea states has no plotting position above {target:.8f}"
        )
    return j, p[j]


def return_value(
    params: DistributionParams,
    return_period_years: float = 1.0,
    sample=None,
    mode: str | None = None,
) -> float:
    """Significant wave height return value.

    Parameters
    ----------
    params : DistributionParams
    return_period_years : float
    sample : optional
        Needed for the empirical-consistent mode.
    mode : {'empirical', 'exact'}, optional
        ``'exact'`` evaluates the ICDF at ``1 - 1/(T * 8766)``.
        ``'empirical'`` evaluates it at the smallest plotting position of
        ``sample`` above that probability, so prediction and empirical value
        share the same probability. Defaults to ``'empirical'`` when a sample
        is given, else ``'exact'``.
    """
    if mode is None:
        mode = "exact" if sample is None else "empirical"
    if mode == "exact":
        p = 1.0 - exceedance_probability(return_period_years)
        if not 0 < p < 1:
            raise DomainError(f"return probability {p} outside (0, 1)")
        return float(params.icdf(p))
    if mode == "empirical":
        if sample is None:
            raise ValueError("empirical-consistent return values need a sample")
        _, p = _empirical_index(len(_sorted(sample)), return_period_years)
        return float(params.icdf(p))
    raise ValueError(f"unknown mode {mode!r}")


def empirical_return_value(sample, return_period_years: float = 1.0) -> float:
    """Smallest ordered observation whose plotting position exceeds ``1 - p_e``."""
    x = _sorted(sample)
    j, _ = _empirical_index(x.size, return_period_years)
    return float(x[j])


def normalized_return_value(hs1_pred: float, sample) -> float:
    """Predicted over empirical 1-year return value.

    The sample must cover at least one year of hourly sea states.
    """
    x = _sorted(sample)
    if x.size < HOURS_PER_YEAR:
        raise InsufficientDataError(
            f"{x.size} sea states is shorter than one year of hourly observations"
        )
    return float(hs1_pred) / empirical_return_value(x, 1.0)


@dataclass(frozen=True)
class GofReport:
    """Goodness-of-fit summary (lengths in meters).

    Fields that cannot be computed for a short sample are NaN.
    """

    e_overall: float
    e_099: float
    e_0999: float
    hs1_pred: float
    hs1_emp: float
    hs1_norm: float
    hs50_pred: float

    def as_dict(self) -> dict:
        return asdict(self)


def gof_report(sample, params: DistributionParams) -> GofReport:
    x = _sorted(sample)
    nan = float("nan")

    def tail(th):
        try:
            return mae_tail(x, params, th)
        except InsufficientTailError:
            return nan

    try:
        hs1_pred = return_value(params, 1.0, x, mode="empirical")
        hs1_emp = empirical_return_value(x, 1.0)
        hs1_norm = normalized_return_value(hs1_pred, x)
    except InsufficientDataError:
        hs1_pred = hs1_emp = hs1_norm = nan
    return GofReport(
        e_overall=mae_overall(x, params),
        e_099=tail(0.99),
        e_0999=tail(0.999),
        hs1_pred=hs1_pred,
        hs1_emp=hs1_emp,
        hs1_norm=hs1_norm,
        hs50_pred=return_value(params, 50.0, mode="exact"),
    )


# --------------------------------------------------------------------------
# plot data
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class QQSeries:
    probability: np.ndarray
    observed: np.ndarray
    model: np.ndarray


def qq_series(sample, params: DistributionParams) -> QQSeries:
    x = _sorted(sample)
    p = plotting_positions(x.size)
    return QQSeries(probability=p, observed=x, model=np.asarray(params.icdf(p), dtype=float))


@dataclass(frozen=True)
class ProbabilityPaperSeries:
    """Empirical points and model curve on Weibull probability paper.

    Abscissa is ``log10(-ln(1 - p))``, ordinate ``log10 x``.
    """

    abscissa: np.ndarray
    ordinate: np.ndarray
    curve_abscissa: np.ndarray
    curve_ordinate: np.ndarray


def weibull_paper_abscissa(p):
    return np.log10(-np.log1p(-np.asarray(p, dtype=float)))


def probability_paper_series(sample, params: DistributionParams, n_curve: int = 500) -> ProbabilityPaperSeries:
    x = _sorted(sample)
    p = plotting_positions(x.size)
    s = weibull_paper_abscissa(p)
    if x.size > 1:
        curve_s = np.linspace(s[0], s[-1], n_curve)
    else:
        curve_s = np.full(n_curve, s[0])
    # invert the abscissa to probabilities: p = 1 - exp(-10**s)
    curve_p = -np.expm1(-(10.0**curve_s))
    return ProbabilityPaperSeries(
        abscissa=s,
        ordinate=np.log10(x),
        curve_abscissa=curve_s,
        curve_ordinate=np.log10(params.icdf(curve_p)),
    )


@dataclass(frozen=True)
class TailDensitySeries:
    """Binned empirical density of the upper tail and the model density.

    ``density`` is normalized by the full sample size, so ``mass = density *
    width`` sums to the fraction of the sample in the tail.
    """

    edges: np.ndarray
    centers: np.ndarray
    density: np.ndarray
    mass: np.ndarray
    model_pdf: np.ndarray
    curve_x: np.ndarray
    curve_pdf: np.ndarray


def tail_density_series(
    sample, params: DistributionParams, threshold: float = 0.99, bins: int = 15, n_curve: int = 200
) -> TailDensitySeries:
    """Equal-width histogram over ``[x_j, max(sample)]``, ``x_j`` the first
    ordered value with plotting position above ``threshold``."""
    if bins < 1:
        raise ValueError("bins must be >= 1")
    x = _sorted(sample)
    p = plotting_positions(x.size)
    j = _first_index_above(p, threshold)
    tail = x[j:]
    lo, hi = float(tail[0]), float(tail[-1])
    if hi == lo:
        hi = lo + 1e-9
    counts, edges = np.histogram(tail, bins=bins, range=(lo, hi))
    width = np.diff(edges)
    density = counts / (x.size * width)
    centers = 0.5 * (edges[:-1] + edges[1:])
    curve_x = np.linspace(lo, hi, n_curve)
    return TailDensitySeries(
        edges=edges,
        centers=centers,
        density=density,
        mass=counts / x.size,
        model_pdf=np.asarray(params.pdf(centers), dtype=float),
        curve_x=curve_x,
        curve_pdf=np.asarray(params.pdf(curve_x), dtype=float),
    )
