import numpy as np
import pytest

from wavedist.distributions import (
    Beta2Params,
    ExpWeibullParams,
    GenGammaParams,
    TranslatedWeibullParams,
    WeibullParams,
)
from wavedist.estimation import plotting_positions

# ranges used for randomized parameter sets, per family
PARAM_RANGES = {
    "exp-weibull": [(0.2, 5.0), (0.3, 5.0), (0.1, 50.0)],
    # beta >= 0.8: for smaller shapes the lowest quantiles sit within one ulp of gamma
    "translated-weibull": [(0.2, 5.0), (0.8, 5.0), (0.0, 2.0)],
    "weibull": [(0.2, 5.0), (0.3, 5.0)],
    "gen-gamma": [(0.3, 4.0), (0.2, 10.0), (0.2, 5.0)],
    # third entry is n - k + 1
    "beta2": [(0.2, 5.0), (0.3, 30.0), (0.2, 10.0)],
}


def make_params(family, u):
    """Map a vector of uniforms in [0, 1) to a valid parameter set (log-uniform for positive ranges)."""
    vals = []
    for (lo, hi), ui in zip(PARAM_RANGES[family], u):
        if lo > 0:
            vals.append(float(np.exp(np.log(lo) + ui * (np.log(hi) - np.log(lo)))))
        else:
            vals.append(lo + ui * (hi - lo))
    if family == "exp-weibull":
        return ExpWeibullParams(*vals)
    if family == "translated-weibull":
        return TranslatedWeibullParams(*vals)
    if family == "weibull":
        return WeibullParams(*vals)
    if family == "gen-gamma":
        return GenGammaParams(*vals)
    alpha, k, a = vals
    return Beta2Params(alpha, k, a + k - 1.0)


def random_params(family, rng):
    return make_params(family, rng.random(len(PARAM_RANGES[family])))


def quantile_sample(params, n):
    """Self-consistent sample: the i-th value is the model quantile at (i - 0.5)/n."""
    return np.asarray(params.icdf(plotting_positions(n)), dtype=float)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
