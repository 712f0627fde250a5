import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wavedist.distributions import ExpWeibullParams, TranslatedWeibullParams, WeibullParams
from wavedist.errors import DomainError, EmptyInputError, InsufficientDataError, InsufficientTailError
from wavedist.estimation import plotting_positions
from wavedist.gof import (
    HOURS_PER_YEAR,
    empirical_return_value,
    exceedance_probability,
    gof_report,
    mae_overall,
    mae_tail,
    normalized_return_value,
    probability_paper_series,
    qq_series,
    return_value,
    tail_density_series,
    weibull_paper_abscissa,
)

from conftest import quantile_sample

P = ExpWeibullParams(1.2, 1.3, 2.0)


class TestMae:
    def test_self_consistent_is_zero(self):
        x = quantile_sample(P, 20_000)
        assert mae_overall(x, P) <= 1e-12
        assert mae_tail(x, P, 0.99) <= 1e-12
        assert mae_tail(x, P, 0.999) <= 1e-12

    def test_constant_offset(self):
        x = quantile_sample(P, 5000)
        for c in (0.1, -0.05):
            assert mae_overall(x + c, P) == pytest.approx(abs(c), abs=1e-12)
            assert mae_tail(x + c, P) == pytest.approx(abs(c), abs=1e-12)

    def test_mixed_sign_residuals_use_absolute_values(self):
        x = quantile_sample(P, 4)
        x = x + np.array([0.1, -0.1, 0.1, -0.1])
        assert mae_overall(x, P) == pytest.approx(0.1, abs=1e-12)

    def test_tail_counts_top_ten_of_thousand(self):
        # only i = 991..1000 have (i - 0.5)/1000 > 0.99
        x = quantile_sample(P, 1000)
        bumped = x.copy()
        bumped[-10:] += 1.0
        assert mae_tail(bumped, P, 0.99) == pytest.approx(1.0, abs=1e-12)
        # shrinking everything below the tail keeps the order and leaves the tail error untouched
        bumped = x.copy()
        bumped[:-10] *= 0.5
        assert mae_tail(bumped, P, 0.99) <= 1e-12

    def test_tiny_threshold_equals_overall(self):
        x = P.sample(3000, 2).values
        assert mae_tail(x, P, 1e-9) == pytest.approx(mae_overall(x, P), rel=1e-14)

    def test_order_of_input_irrelevant(self):
        x = P.sample(3000, 2).values
        assert mae_overall(x[::-1], P) == mae_overall(np.sort(x), P)

    def test_errors(self):
        with pytest.raises(InsufficientTailError):
            mae_tail(quantile_sample(P, 10), P, 0.99)
        with pytest.raises(EmptyInputError):
            mae_overall([], P)
        with pytest.raises(DomainError):
            mae_tail([1.0, 2.0], P, 1.0)


class TestReturnValues:
    def test_exceedance_probability(self):
        assert exceedance_probability(1) == pytest.approx(1 / 8766, rel=1e-15)
        assert HOURS_PER_YEAR == 8766
        assert exceedance_probability(50) == pytest.approx(1 / 438_300, rel=1e-15)

    def test_exponential_closed_form(self):
        # exact quantile of a unit exponential is -ln(p_e) = ln 8766
        assert return_value(ExpWeibullParams(1, 1, 1), 1.0) == pytest.approx(math.log(8766), rel=1e-12)
        assert math.log(8766) == pytest.approx(9.0786, abs=1e-4)

    def test_increasing_in_period(self):
        vals = [return_value(P, t) for t in (1, 5, 10, 50, 100)]
        assert np.all(np.diff(vals) > 0)

    def test_empirical_mode_within_one_step(self):
        n = 3 * 8766
        x = quantile_sample(P, n)
        exact = return_value(P, 1.0)
        emp = return_value(P, 1.0, x)
        assert emp >= exact
        # the empirical position sits at most one plotting step above the exact probability
        p = 1 - 1 / 8766
        assert emp <= float(P.icdf(p + 1 / n))

    def test_self_consistent_ratio_is_one(self):
        x = quantile_sample(P, 2 * 8766)
        pred = return_value(P, 1.0, x)
        assert normalized_return_value(pred, x) == pytest.approx(1.0, abs=1e-12)

    def test_empirical_return_value_index(self):
        n = 8766
        x = np.arange(1, n + 1, dtype=float)
        # smallest (i - 0.5)/n above 1 - 1/n is i = n
        assert empirical_return_value(x, 1.0) == n

    def test_short_sample(self):
        x = quantile_sample(P, 8765)
        with pytest.raises(InsufficientDataError):
            normalized_return_value(5.0, x)
        with pytest.raises(InsufficientDataError):
            empirical_return_value(quantile_sample(P, 100), 1.0)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            return_value(P, 1.0, mode="empirical")
        with pytest.raises(ValueError):
            return_value(P, 1.0, [1.0], mode="median")


class TestReport:
    def test_self_consistent_report(self):
        x = quantile_sample(P, 10_000)
        rep = gof_report(x, P)
        assert rep.e_overall <= 1e-12
        assert rep.e_099 <= 1e-12
        assert rep.e_0999 <= 1e-12
        assert rep.hs1_norm == pytest.approx(1.0, abs=1e-12)
        assert rep.hs50_pred == pytest.approx(float(P.icdf(1 - 1 / (50 * 8766))))
        assert set(rep.as_dict()) == {"e_overall", "e_099", "e_0999", "hs1_pred", "hs1_emp", "hs1_norm", "hs50_pred"}

    def test_short_sample_gives_nan(self):
        rep = gof_report(quantile_sample(P, 500), P)
        assert math.isnan(rep.hs1_norm)
        assert math.isnan(rep.e_0999)
        assert not math.isnan(rep.e_099)


class TestPlotData:
    def test_qq_diagonal(self):
        x = quantile_sample(P, 700)
        qq = qq_series(x, P)
        assert qq.observed.size == 700
        np.testing.assert_allclose(qq.observed, qq.model, rtol=1e-12)

    def test_paper_abscissa(self):
        assert weibull_paper_abscissa(1 - math.exp(-1)) == pytest.approx(0.0, abs=1e-15)
        s = weibull_paper_abscissa(plotting_positions(100))
        assert np.all(np.diff(s) > 0)

    def test_paper_weibull_is_straight(self):
        params = WeibullParams(1.7, 1.4)
        pp = probability_paper_series(quantile_sample(params, 300), params, n_curve=500)
        assert pp.curve_abscissa.size == 500
        assert pp.abscissa.size == 300
        # log10 x = log10 alpha + s / beta on Weibull paper
        np.testing.assert_allclose(pp.curve_ordinate, math.log10(1.7) + pp.curve_abscissa / 1.4, atol=1e-12)
        np.testing.assert_allclose(pp.ordinate, math.log10(1.7) + pp.abscissa / 1.4, atol=1e-12)

    def test_tail_density_masses(self):
        x = P.sample(20_000, 3).values
        td = tail_density_series(x, P, threshold=0.99, bins=15)
        assert td.edges.size == 16
        # exactly 200 points have p_i > 0.99 when n = 20000
        assert td.mass.sum() == pytest.approx(200 / 20_000, rel=1e-12)
        np.testing.assert_allclose(td.density * np.diff(td.edges), td.mass, rtol=1e-12)
        assert np.all(td.model_pdf > 0)

    def test_tail_density_errors(self):
        with pytest.raises(InsufficientTailError):
            tail_density_series(quantile_sample(P, 50), P, threshold=0.99)
        with pytest.raises(ValueError):
            tail_density_series(quantile_sample(P, 500), P, bins=0)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**31), th=st.sampled_from([0.5, 0.9, 0.99]))
def test_tail_mae_nonnegative_and_finite(seed, th):
    p = TranslatedWeibullParams(1.0, 1.5, 0.2)
    x = p.sample(1000, seed).values
    v = mae_tail(x, p, th)
    assert np.isfinite(v) and v >= 0
