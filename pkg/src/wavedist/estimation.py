"""
Parameter estimation.

Two estimators are provided:

* :func:`fit_wls` -- weighted least squares on Weibull probability paper for
  the exponentiated Weibull distribution. For fixed ``delta`` the ICDF is
  linear on the axes ``(log10[-ln(1 - p**(1/delta))], log10 x)``, so the
  intercept ``a = log10(alpha)`` and slope ``b = 1/beta`` follow in closed form
  from a weighted linear regression. ``delta`` is then found by a bracketed
  one-dimensional search over the resulting weighted squared error.
  Weights ``w_i = x_i**q / sum(x**q)`` put the emphasis on high sea states.

* :func:`fit_mle` -- maximum likelihood for every family, using a simplex
  search in an unconstrained transformed parameter space.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import optimize, special

from .distributions import (
    Beta2Params,
    DistributionParams,
    ExpWeibullParams,
    GenGammaParams,
    TranslatedWeibullParams,
    WeibullParams,
    family_class,
    log1mexp,
)
from .errors import (
    DegenerateInputError,
    DomainError,
    EmptyInputError,
    EstimationError,
    ParameterDomainError,
)
from .samples import sorted_values

logger = logging.getLogger(__name__)

__all__ = [
    "WeightScheme",
    "LinearizedFit",
    "FitReport",
    "plotting_positions",
    "compute_weights",
    "linearized_positions",
    "wls_ab_given_delta",
    "wls_objective",
    "golden_section_search",
    "fit_wls",
    "fit_mle",
    "fit",
    "LOG_DELTA_BRACKET",
]

#: Search interval for ``ln(delta)`` used by :func:`fit_wls`.
LOG_DELTA_BRACKET = (math.log(0.01), math.log(200.0))

_LN10 = math.log(10.0)
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class WeightScheme:
    """Power-law weights ``w_i = x_i**exponent / sum_j x_j**exponent``.

    ``exponent=2`` (quadratic) is the default; 1 and 3 give linearly and
    cubically increasing weights.
    """

    exponent: float = 2

    def __post_init__(self):
        if not (np.isfinite(self.exponent) and self.exponent > 0):
            raise ValueError(f"weight exponent must be a positive number, got {self.exponent}")

    def weights(self, x) -> np.ndarray:
        return compute_weights(x, self)


@dataclass(frozen=True)
class LinearizedFit:
    """Closed-form weighted regression on probability paper for a fixed ``delta``.

    ``a`` is the intercept (``log10 alpha``), ``b`` the slope (``1/beta``) and
    ``Q`` the weighted squared error at ``(a, b)``.
    """

    a: float
    b: float
    delta: float
    Q: float

    @property
    def alpha(self) -> float:
        return 10.0**self.a

    @property
    def beta(self) -> float:
        if not self.b > 0:
            raise EstimationError(f"non-positive slope b={self.b}; no valid beta")
        return 1.0 / self.b


@dataclass(frozen=True)
class FitReport:
    """Result of a parameter estimation.

    Attributes
    ----------
    params : DistributionParams
        Fitted parameters.
    method : {'mle', 'wls'}
    weight_scheme : WeightScheme or None
        Only set for WLS fits.
    stderr : ndarray or None
        Bootstrap standard error per parameter, in ``params.names()`` order.
    objective_value : float
        Log-likelihood (MLE) or weighted squared error Q (WLS) at the optimum.
    n : int
        Sample size.
    diagnostics : dict
        Optimizer details (iterations, evaluations, ...).
    """

    params: DistributionParams
    method: str
    weight_scheme: WeightScheme | None = None
    stderr: np.ndarray | None = None
    objective_value: float = float("nan")
    n: int = 0
    diagnostics: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.stderr is not None:
            se = np.asarray(self.stderr, dtype=float)
            if se.shape != (len(self.params.names()),) or np.any(se < 0):
                raise ValueError("stderr needs one non-negative entry per parameter")
            object.__setattr__(self, "stderr", se)

    @property
    def family(self) -> str:
        return self.params.family

    def with_stderr(self, stderr) -> "FitReport":
        return replace(self, stderr=np.asarray(stderr, dtype=float))

    def as_dict(self) -> dict:
        out = {"family": self.family, "method": self.method}
        out["weight_exponent"] = None if self.weight_scheme is None else self.weight_scheme.exponent
        for i, name in enumerate(self.params.names()):
            out[name] = getattr(self.params, name)
            out[f"{name}_se"] = None if self.stderr is None else float(self.stderr[i])
        out["objective"] = self.objective_value
        out["n"] = self.n
        return out


# --------------------------------------------------------------------------
# weighted least squares
# --------------------------------------------------------------------------


def plotting_positions(n: int) -> np.ndarray:
    """``p_i = (i - 0.5)/n`` for ``i = 1..n``."""
    if n < 1:
        raise EmptyInputError("plotting positions of an empty sample")
    return (np.arange(1, n + 1) - 0.5) / n


def _positive_values(sample) -> np.ndarray:
    x = np.asarray(sample, dtype=float).ravel()
    if x.size == 0:
        raise EmptyInputError("sample is empty")
    if not np.all(np.isfinite(x)) or np.any(x <= 0):
        raise DomainError("sample values must be finite and > 0")
    return x


def compute_weights(sample, scheme: WeightScheme = WeightScheme()) -> np.ndarray:
    """Normalized power-law weights, one per observation."""
    x = _positive_values(sample)
    # dividing by the maximum first keeps large exponents from overflowing
    w = (x / x.max()) ** scheme.exponent
    return w / w.sum()


def _ln_neg_ln_one_minus(u):
    """``ln(-ln(1 - exp(u)))`` for ``u < 0``, accurate for very negative ``u``."""
    u = np.asarray(u, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = np.log(-log1mexp(u))
    # -ln(1 - t) = t + t**2/2 + ...  for tiny t = exp(u)
    series = u + np.exp(u) / 2.0
    return np.where(u < -20.0, series, direct)


def linearized_positions(positions, delta: float) -> np.ndarray:
    """Probability paper abscissa ``log10[-ln(1 - p**(1/delta))]``."""
    if not delta > 0:
        raise ParameterDomainError(f"delta must be > 0, got {delta}")
    p = np.asarray(positions, dtype=float)
    if np.any(~(p > 0) | ~(p < 1)):
        raise DomainError("plotting positions must lie strictly inside (0, 1)")
    return _ln_neg_ln_one_minus(np.log(p) / delta) / _LN10


class _WlsProblem:
    """Sorted log-data, weights and log plotting positions shared across delta values."""

    def __init__(self, x_sorted, weights):
        self.xstar = np.log10(x_sorted)
        self.w = np.asarray(weights, dtype=float)
        self.logp = np.log(plotting_positions(x_sorted.size))
        self.xbar = float(np.dot(self.w, self.xstar))
        self.dx = self.xstar - self.xbar

    def solve(self, delta: float) -> LinearizedFit:
        pstar = _ln_neg_ln_one_minus(self.logp / delta) / _LN10
        pbar = float(np.dot(self.w, pstar))
        dp = pstar - pbar
        # centered form of sum(w p* x*) - x̄* p̄* over sum(w p*^2) - p̄*^2
        denom = float(np.dot(self.w, dp * dp))
        if not denom > 0:
            raise DegenerateInputError("all linearized plotting positions coincide; slope undefined")
        b = float(np.dot(self.w, dp * self.dx)) / denom
        a = self.xbar - b * pbar
        r = self.dx - b * dp
        return LinearizedFit(a=a, b=b, delta=float(delta), Q=float(np.dot(self.w, r * r)))


def _prepare_wls(sample, weights):
    x = np.sort(_positive_values(sample), kind="stable")
    if weights is None:
        weights = compute_weights(x)
    weights = np.asarray(weights, dtype=float)
    if weights.shape != x.shape:
        raise ValueError(f"weights shape {weights.shape} does not match sample shape {x.shape}")
    return _WlsProblem(x, weights)


def wls_ab_given_delta(sample, weights=None, delta: float = 1.0) -> LinearizedFit:
    """Weighted least squares intercept and slope on probability paper for fixed ``delta``.

    ``sample`` is sorted internally; ``weights`` must then be given in ascending
    order of the sample (as returned by :func:`compute_weights` on the sorted
    sample). Defaults to quadratic weights.
    """
    if not delta > 0:
        raise ParameterDomainError(f"delta must be > 0, got {delta}")
    return _prepare_wls(sample, weights).solve(delta)


def wls_objective(sample, weights=None, delta: float = 1.0) -> float:
    """Weighted squared error at the closed-form ``(a, b)`` for this ``delta``."""
    return wls_ab_given_delta(sample, weights, delta).Q


def golden_section_search(f, lo: float, hi: float, xtol: float = 1e-10, maxiter: int = 500):
    """Minimize a unimodal scalar function on ``[lo, hi]``.

    Returns
    -------
    x, fx, niter
    """
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    niter = 0
    while abs(b - a) > xtol:
        if niter >= maxiter:
            raise EstimationError(
                "golden-section search did not converge", last_iterate=0.5 * (a + b)
            )
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        niter += 1
    x = 0.5 * (a + b)
    fx = f(x)
    # the interior points may undercut the midpoint on a flat valley floor
    for xc, fxc in ((c, fc), (d, fd)):
        if fxc < fx:
            x, fx = xc, fxc
    return x, fx, niter


def fit_wls(
    sample,
    scheme: WeightScheme = WeightScheme(),
    *,
    bracket: tuple[float, float] = LOG_DELTA_BRACKET,
    xtol: float = 1e-10,
    n_scan: int = 41,
) -> FitReport:
    """Fit an exponentiated Weibull distribution by weighted least squares.

    The sample is sorted internally. ``ln(delta)`` is located by a coarse scan
    of ``n_scan`` points over ``bracket`` followed by golden-section refinement
    between the neighbours of the best scan point.

    Raises
    ------
    EstimationError
        If the error function is not finite anywhere or the optimum has a
        non-positive slope.
    """
    x = np.sort(_positive_values(sample), kind="stable")
    if x.size < 2:
        raise DegenerateInputError("weighted least squares needs at least two observations")
    problem = _WlsProblem(x, compute_weights(x, scheme))

    def q_of_logdelta(t):
        q = problem.solve(math.exp(t)).Q
        return q if np.isfinite(q) else np.inf

    grid = np.linspace(bracket[0], bracket[1], n_scan)
    qs = np.array([q_of_logdelta(t) for t in grid])
    if not np.any(np.isfinite(qs)):
        raise EstimationError("weighted squared error is not finite on the delta bracket")
    i = int(np.argmin(qs))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, n_scan - 1)]
    t_opt, _, niter = golden_section_search(q_of_logdelta, lo, hi, xtol=xtol)
    lin = problem.solve(math.exp(t_opt))
    if not lin.b > 0:
        raise EstimationError(
            f"slope b={lin.b} at the optimum is not positive", last_iterate=(lin.a, lin.b, lin.delta)
        )
    at_edge = min(t_opt - bracket[0], bracket[1] - t_opt) < 1e-6
    if at_edge:
        logger.warning("delta=%g lies on the edge of the search bracket; the WLS optimum may be outside it", lin.delta)
    params = ExpWeibullParams(alpha=lin.alpha, beta=lin.beta, delta=lin.delta)
    return FitReport(
        params=params,
        method="wls",
        weight_scheme=scheme,
        objective_value=lin.Q,
        n=int(x.size),
        diagnostics={"a": lin.a, "b": lin.b, "golden_iterations": niter, "scan_index": i, "at_bracket_edge": at_edge},
    )


# --------------------------------------------------------------------------
# maximum likelihood
# --------------------------------------------------------------------------


def _weibull_moment_start(x):
    """Weibull (alpha, beta) matching the sample mean and coefficient of variation."""
    mean = float(np.mean(x))
    cv = float(np.std(x)) / mean

    def cv_of(beta):
        g1 = special.gammaln(1 + 1 / beta)
        g2 = special.gammaln(1 + 2 / beta)
        return math.sqrt(max(math.exp(g2 - 2 * g1) - 1, 0.0))

    lo, hi = 0.05, 50.0
    if cv >= cv_of(lo):
        beta = lo
    elif cv <= cv_of(hi):
        beta = hi
    else:
        beta = optimize.brentq(lambda b: cv_of(b) - cv, lo, hi)
    alpha = mean / math.exp(special.gammaln(1 + 1 / beta))
    return alpha, beta


def _logit(u):
    return math.log(u / (1 - u))


def _expit(t):
    return special.expit(t)


class _Transform:
    """Maps parameters of one family to an unconstrained vector and back."""

    def __init__(self, family, x):
        self.family = family
        self.xmin = float(x[0])

    def to_params(self, theta):
        t = np.asarray(theta, dtype=float)
        e = np.exp(np.clip(t, -700, 700))
        if self.family == "weibull":
            return WeibullParams(float(e[0]), float(e[1]))
        if self.family == "exp-weibull":
            return ExpWeibullParams(float(e[0]), float(e[1]), float(e[2]))
        if self.family == "translated-weibull":
            return TranslatedWeibullParams(float(e[0]), float(e[1]), self.xmin * float(_expit(t[2])))
        if self.family == "gen-gamma":
            return GenGammaParams(float(e[0]), float(e[1]), float(e[2]))
        if self.family == "beta2":
            return Beta2Params(float(e[0]), float(e[1]), float(e[1] - 1.0 + e[2]))
        raise ValueError(self.family)

    def to_theta(self, params):
        if self.family == "translated-weibull":
            u = min(max(params.gamma / self.xmin, 1e-12), 1 - 1e-12)
            return np.array([math.log(params.alpha), math.log(params.beta), _logit(u)])
        if self.family == "beta2":
            return np.log([params.alpha, params.k, params.n - params.k + 1.0])
        return np.log(params.to_array())


def _beta2_start(x):
    median = float(np.median(x))
    best, best_ll = None, -np.inf
    for a in (0.5, 1.0, 2.0, 4.0, 8.0, 16.0):
        for b in (1.5, 3.0, 6.0, 12.0, 24.0, 48.0):
            y_med = Beta2Params(1.0, b, a + b - 1.0).icdf(0.5)
            cand = Beta2Params(y_med / median, b, a + b - 1.0)
            ll = float(np.mean(cand.logpdf(x)))
            if ll > best_ll:
                best, best_ll = cand, ll
    return best


def _mle_start(family, x):
    if family == "translated-weibull":
        gamma0 = 0.5 * float(x[0])
        alpha, beta = _weibull_moment_start(x - gamma0)
        return TranslatedWeibullParams(alpha, beta, gamma0)
    if family == "beta2":
        return _beta2_start(x)
    alpha, beta = _weibull_moment_start(x)
    if family == "weibull":
        return WeibullParams(alpha, beta)
    if family == "exp-weibull":
        return ExpWeibullParams(alpha, beta, 1.0)
    if family == "gen-gamma":
        return GenGammaParams(beta, 1.0, 1.0 / alpha)
    raise ValueError(family)


def fit_mle(
    family: str,
    sample,
    *,
    start: DistributionParams | None = None,
    xatol: float = 1e-8,
    fatol: float = 1e-10,
    maxfev: int = 10_000,
) -> FitReport:
    """Maximum likelihood fit of ``family`` to ``sample``.

    The negative mean log-likelihood is minimized with a Nelder-Mead simplex
    over log-transformed parameters (the translated Weibull location is
    mapped through a logistic transform onto ``(0, min(sample))``). The search
    is restarted once from its own optimum to escape a collapsed simplex.

    Parameters
    ----------
    family : str
        One of the tags in :data:`wavedist.distributions.FAMILIES`.
    sample : HsSample or array_like
    start : DistributionParams, optional
        Initial guess; by default a moment-matched Weibull or a nested
        simpler model.
    xatol, fatol : float
        Simplex convergence tolerances on the transformed parameters and the
        mean log-likelihood.
    maxfev : int
        Evaluation budget per simplex run.

    Raises
    ------
    EstimationError
        If the optimizer exhausts its budget or ends at a non-finite likelihood.
    """
    family_class(family)
    x = np.asarray(sorted_values(sample), dtype=float)
    if x.size == 0:
        raise EmptyInputError("cannot fit an empty sample")
    if not np.all(np.isfinite(x)) or np.any(x <= 0):
        raise DomainError("sample values must be finite and > 0")
    if x.size < 2 or x[0] == x[-1]:
        raise DegenerateInputError("maximum likelihood needs at least two distinct observations")

    tr = _Transform(family, x)
    start = start if start is not None else _mle_start(family, x)
    if start.family != family:
        raise ValueError(f"start parameters are {start.family}, expected {family}")

    def nll(theta):
        try:
            params = tr.to_params(theta)
        except ParameterDomainError:
            return np.inf
        if family == "translated-weibull" and not params.gamma < x[0]:
            return np.inf
        lp = params.logpdf(x)
        v = -float(np.mean(lp))
        return v if np.isfinite(v) else np.inf

    theta = tr.to_theta(start)
    nfev = nit = 0
    res = None
    for _ in range(2):
        res = optimize.minimize(
            nll,
            theta,
            method="Nelder-Mead",
            options={"xatol": xatol, "fatol": fatol, "maxfev": maxfev, "maxiter": maxfev},
        )
        nfev += res.nfev
        nit += res.nit
        theta = res.x
    diagnostics = {"nfev": nfev, "nit": nit, "message": res.message, "start": start}
    if not res.success:
        raise EstimationError(
            f"{family} maximum likelihood did not converge: {res.message}",
            last_iterate=res.x,
            diagnostics=diagnostics,
        )
    if not np.isfinite(res.fun):
        raise EstimationError(
            f"{family} maximum likelihood ended at a non-finite likelihood",
            last_iterate=res.x,
            diagnostics=diagnostics,
        )
    params = tr.to_params(res.x)
    return FitReport(
        params=params,
        method="mle",
        objective_value=-res.fun * x.size,
        n=int(x.size),
        diagnostics=diagnostics,
    )


def fit(sample, family: str = "exp-weibull", method: str = "wls", scheme: WeightScheme | None = None) -> FitReport:
    """Dispatch to :func:`fit_wls` or :func:`fit_mle`."""
    if method == "wls":
        if family != "exp-weibull":
            raise ValueError("weighted least squares is only defined for the exp-weibull family")
        return fit_wls(sample, scheme or WeightScheme())
    if method == "mle":
        return fit_mle(family, sample)
    raise ValueError(f"unknown method {method!r}; expected 'mle' or 'wls'")
