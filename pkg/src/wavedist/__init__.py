"""Long-term distributions of significant wave height.

Exponentiated Weibull and competing 3-parameter families, maximum likelihood
and tail-weighted least squares estimation, bootstrap standard errors and
goodness-of-fit metrics focused on the upper tail.
"""

__version__ = "0.1.0"

from .distributions import (
    Beta2Params,
    ExpWeibullParams,
    GenGammaParams,
    TranslatedWeibullParams,
    TwoParamWeibullParams,
    WeibullParams,
    cdf,
    icdf,
    log_likelihood,
    pdf,
    sample,
)
from .estimation import FitReport, WeightScheme, fit, fit_mle, fit_wls
from .bootstrap import BootstrapConfig, Estimator, bootstrap_se
from .gof import GofReport, gof_report, mae_overall, mae_tail, return_value
from .samples import HsSample

__all__ = [
    "Beta2Params",
    "ExpWeibullParams",
    "GenGammaParams",
    "TranslatedWeibullParams",
    "TwoParamWeibullParams",
    "WeibullParams",
    "cdf",
    "icdf",
    "log_likelihood",
    "pdf",
    "sample",
    "FitReport",
    "WeightScheme",
    "fit",
    "fit_mle",
    "fit_wls",
    "BootstrapConfig",
    "Estimator",
    "bootstrap_se",
    "GofReport",
    "gof_report",
    "mae_overall",
    "mae_tail",
    "return_value",
    "HsSample",
]
