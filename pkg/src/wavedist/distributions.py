"""
Parametric families for the long-term distribution of significant wave height.

Five families are provided, each as an immutable parameter class:

=====================  ==========================  ==============================
family tag             class                       parameters
=====================  ==========================  ==============================
``exp-weibull``        :class:`ExpWeibullParams`    alpha (scale), beta, delta
``translated-weibull`` :class:`TranslatedWeibullParams` alpha, beta, gamma (location)
``weibull``            :class:`WeibullParams`       alpha, beta
``gen-gamma``          :class:`GenGammaParams`      c, m, lam (inverse scale)
``beta2``              :class:`Beta2Params`         alpha (inverse scale), k, n
=====================  ==========================  ==============================

The exponentiated Weibull CDF is ``F(x) = [1 - exp(-(x/alpha)**beta)]**delta``.
With ``delta = 1`` it is the 2-parameter Weibull distribution.

Every class exposes ``cdf``, ``pdf``, ``logpdf``, ``icdf`` and ``sample``. The
module level functions of the same name accept any parameter object.
"""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass, fields
from typing import ClassVar, Union

import numpy as np
from scipy import special

from .errors import DomainError, EmptyInputError, ParameterDomainError
from .samples import HsSample, as_values

__all__ = [
    "ExpWeibullParams",
    "TranslatedWeibullParams",
    "WeibullParams",
    "TwoParamWeibullParams",
    "GenGammaParams",
    "Beta2Params",
    "DistributionParams",
    "FAMILIES",
    "family_class",
    "cdf",
    "pdf",
    "logpdf",
    "icdf",
    "log_likelihood",
    "sample",
]


def _scalar_or_array(out):
    return out[()] if out.ndim == 0 else out


def _check_probability(p):
    p = np.asarray(p, dtype=float)
    if np.any(~(p > 0) | ~(p < 1)):
        raise DomainError("probabilities must lie strictly inside (0, 1)")
    return p


def log1mexp(x):
    """``log(1 - exp(x))`` for ``x <= 0`` without cancellation at either end."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(x > -math.log(2.0), np.log(-np.expm1(x)), np.log1p(-np.exp(x)))


def _uniform_open(rng, n):
    # 52-bit grid shifted by half a step: strictly inside (0, 1)
    return (rng.integers(0, 2**52, size=n) + 0.5) / 2.0**52


class _Family:
    family: ClassVar[str]

    def __post_init__(self):
        values = astuple(self)
        if not all(np.isfinite(v) for v in values):
            raise ParameterDomainError(f"{type(self).__name__}: parameters must be finite, got {values}")
        self._check()

    def _check(self):
        for f in fields(self):
            if not getattr(self, f.name) > 0:
                raise ParameterDomainError(
                    f"{type(self).__name__}: {f.name} must be > 0, got {getattr(self, f.name)}"
                )

    @classmethod
    def names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def to_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)

    @classmethod
    def from_array(cls, values):
        return cls(*(float(v) for v in values))

    def pdf(self, x):
        with np.errstate(over="ignore", under="ignore"):
            return _scalar_or_array(np.exp(np.asarray(self.logpdf(x), dtype=float)))

    def sample(self, n: int, seed=None) -> HsSample:
        """Draw ``n`` observations by inverse transform sampling."""
        n = int(n)
        if n < 1:
            raise EmptyInputError("sample size must be >= 1")
        rng = np.random.default_rng(seed)
        return HsSample(self.icdf(_uniform_open(rng, n)), source_label=f"synthetic {self.family}")


@dataclass(frozen=True)
class WeibullParams(_Family):
    """2-parameter Weibull distribution, ``F(x) = 1 - exp(-(x/alpha)**beta)``."""

    alpha: float
    beta: float
    family: ClassVar[str] = "weibull"

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        z = np.maximum(x, 0.0) / self.alpha
        with np.errstate(over="ignore"):
            out = -np.expm1(-(z**self.beta))
        return _scalar_or_array(np.where(x > 0, out, 0.0))

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        xs = np.maximum(x, 0.0) / self.alpha
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            out = np.log(self.beta / self.alpha) + special.xlogy(self.beta - 1, xs) - xs**self.beta
        return _scalar_or_array(np.where(x >= 0, out, -np.inf))

    def icdf(self, p):
        p = _check_probability(p)
        return _scalar_or_array(self.alpha * (-np.log1p(-p)) ** (1.0 / self.beta))


TwoParamWeibullParams = WeibullParams


@dataclass(frozen=True)
class ExpWeibullParams(_Family):
    """Exponentiated Weibull distribution.

    ``F(x) = [1 - exp(-(x/alpha)**beta)]**delta`` for ``x > 0``.
    """

    alpha: float
    beta: float
    delta: float
    family: ClassVar[str] = "exp-weibull"

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        z = np.maximum(x, 0.0) / self.alpha
        with np.errstate(divide="ignore", over="ignore"):
            # delta * log(...) keeps large delta from overflowing
            out = np.exp(self.delta * log1mexp(-(z**self.beta)))
        return _scalar_or_array(np.where(x > 0, out, 0.0))

    def logpdf(self, x):
        a, b, d = self.alpha, self.beta, self.delta
        x = np.asarray(x, dtype=float)
        xs = np.maximum(x, 0.0) / a
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            z = xs**b
            out = (
                np.log(d * b / a)
                + special.xlogy(b - 1, xs)
                - z
                + np.where(d == 1, 0.0, (d - 1) * log1mexp(-z))
            )
        # density at the origin behaves like x**(beta*delta - 1)
        bd = b * d
        at_zero = np.log(d * b / a) if np.isclose(bd, 1.0, rtol=0, atol=1e-14) else (np.inf if bd < 1 else -np.inf)
        out = np.where(x == 0, at_zero, out)
        return _scalar_or_array(np.where(x >= 0, out, -np.inf))

    def icdf(self, p):
        p = _check_probability(p)
        # -ln(1 - p**(1/delta)) with p**(1/delta) = exp(ln(p)/delta)
        q = -log1mexp(np.log(p) / self.delta)
        return _scalar_or_array(self.alpha * q ** (1.0 / self.beta))


@dataclass(frozen=True)
class TranslatedWeibullParams(_Family):
    """Translated (3-parameter) Weibull, ``F(x) = 1 - exp(-((x - gamma)/alpha)**beta)``."""

    alpha: float
    beta: float
    gamma: float
    family: ClassVar[str] = "translated-weibull"

    def _check(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise ParameterDomainError(f"alpha and beta must be > 0, got {self.alpha}, {self.beta}")
        if not self.gamma >= 0:
            raise ParameterDomainError(f"gamma must be >= 0, got {self.gamma}")

    @property
    def base(self) -> WeibullParams:
        return WeibullParams(self.alpha, self.beta)

    def cdf(self, x):
        return self.base.cdf(np.asarray(x, dtype=float) - self.gamma)

    def logpdf(self, x):
        return self.base.logpdf(np.asarray(x, dtype=float) - self.gamma)

    def icdf(self, p):
        return self.gamma + self.base.icdf(p)


@dataclass(frozen=True)
class GenGammaParams(_Family):
    """Generalized gamma distribution.

    ``f(x) = c / Gamma(m) * lam**(c*m) * x**(c*m - 1) * exp(-(lam*x)**c)``
    """

    c: float
    m: float
    lam: float
    family: ClassVar[str] = "gen-gamma"

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore"):
            out = special.gammainc(self.m, (self.lam * np.maximum(x, 0.0)) ** self.c)
        return _scalar_or_array(np.where(x > 0, out, 0.0))

    def logpdf(self, x):
        c, m, lam = self.c, self.m, self.lam
        x = np.asarray(x, dtype=float)
        y = lam * np.maximum(x, 0.0)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            out = np.log(c * lam) - special.gammaln(m) + special.xlogy(c * m - 1, y) - y**c
        return _scalar_or_array(np.where(x >= 0, out, -np.inf))

    def icdf(self, p):
        p = _check_probability(p)
        # upper branch avoids cancellation in 1 - p for the far tail
        with np.errstate(divide="ignore"):
            g = np.where(p > 0.5, special.gammainccinv(self.m, 1.0 - p), special.gammaincinv(self.m, p))
        return _scalar_or_array(g ** (1.0 / self.c) / self.lam)


@dataclass(frozen=True)
class Beta2Params(_Family):
    """3-parameter beta distribution of the second kind.

    ``f(x) = alpha / B(k, n - k + 1) * (alpha*x)**(n - k) / (1 + alpha*x)**(n + 1)``

    With ``y = alpha*x``, ``y`` is beta-prime distributed with shapes
    ``(n - k + 1, k)``.
    """

    alpha: float
    k: float
    n: float
    family: ClassVar[str] = "beta2"

    def _check(self):
        if not (self.alpha > 0 and self.k > 0):
            raise ParameterDomainError(f"alpha and k must be > 0, got {self.alpha}, {self.k}")
        if not self.n - self.k + 1 > 0:
            raise ParameterDomainError(f"n - k + 1 must be > 0, got n={self.n}, k={self.k}")

    @property
    def _shapes(self):
        return self.n - self.k + 1.0, self.k

    def cdf(self, x):
        a, b = self._shapes
        x = np.asarray(x, dtype=float)
        y = self.alpha * np.maximum(x, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            lower = special.betainc(a, b, y / (1.0 + y))
            upper = special.betaincc(b, a, 1.0 / (1.0 + y))
        out = np.where(y < 1, lower, upper)
        return _scalar_or_array(np.where(x > 0, out, 0.0))

    def logpdf(self, x):
        a, b = self._shapes
        x = np.asarray(x, dtype=float)
        y = self.alpha * np.maximum(x, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (
                np.log(self.alpha)
                - special.betaln(b, a)
                + special.xlogy(self.n - self.k, y)
                - (self.n + 1) * np.log1p(y)
            )
        return _scalar_or_array(np.where(x >= 0, out, -np.inf))

    def icdf(self, p):
        p = _check_probability(p)
        a, b = self._shapes
        with np.errstate(divide="ignore", invalid="ignore"):
            t = special.betaincinv(a, b, p)
            u = special.betaincinv(b, a, 1.0 - p)
            y = np.where(p > 0.5, (1.0 - u) / u, t / (1.0 - t))
        return _scalar_or_array(y / self.alpha)


DistributionParams = Union[
    ExpWeibullParams, TranslatedWeibullParams, WeibullParams, GenGammaParams, Beta2Params
]

FAMILIES: dict[str, type] = {
    cls.family: cls
    for cls in (ExpWeibullParams, TranslatedWeibullParams, WeibullParams, GenGammaParams, Beta2Params)
}


def family_class(family: str) -> type:
    """Look up a parameter class by its family tag."""
    try:
        return FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of {sorted(FAMILIES)}") from None


def cdf(params: DistributionParams, x):
    return params.cdf(x)


def pdf(params: DistributionParams, x):
    return params.pdf(x)


def logpdf(params: DistributionParams, x):
    return params.logpdf(x)


def icdf(params: DistributionParams, p):
    """Quantile function; ``p`` must lie strictly inside (0, 1)."""
    return params.icdf(p)


def log_likelihood(params: DistributionParams, sample) -> float:
    """Sum of log densities of ``sample``; ``-inf`` if any point has zero density.

    For the translated Weibull, observations at or below ``gamma`` have zero
    density.
    """
    x = as_values(sample)
    if x.size == 0:
        raise EmptyInputError("log-likelihood of an empty sample")
    if isinstance(params, TranslatedWeibullParams) and np.any(x <= params.gamma):
        return -np.inf
    lp = np.asarray(params.logpdf(x), dtype=float)
    if np.any(np.isnan(lp)) or np.any(lp == -np.inf):
        return -np.inf
    return float(np.sum(lp))


def sample(params: DistributionParams, n: int, seed=None) -> HsSample:
    return params.sample(n, seed)
