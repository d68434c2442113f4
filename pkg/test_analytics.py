# test_analytics.py
import math
import warnings

import numpy as np
import pandas as pd
import pytest

from analytics import (
    fit_loglog,
    grows_at_most_linearly,
    pass_fraction,
    ratio_stability,
    summary_table,
)


def test_fit_recovers_power_law():
    xs = np.geomspace(1e-4, 1.0, 9)
    fit = fit_loglog(xs, 3.0 * xs ** 1.2)
    assert fit.slope == pytest.approx(1.2)
    assert fit.intercept == pytest.approx(math.log(3.0))
    assert fit.residual == pytest.approx(0.0, abs=1e-10)
    assert fit.predict(0.5) == pytest.approx(3.0 * 0.5 ** 1.2)


def test_fit_ignores_non_positive_points():
    fit = fit_loglog([0.0, 1.0, 2.0, 4.0], [1.0, 1.0, 2.0, 4.0])
    assert fit.n_points == 3
    assert fit.slope == pytest.approx(1.0)
    with pytest.raises(ValueError):
        fit_loglog([1.0], [1.0])


def test_linear_growth_check():
    omegas = [1.0, 2.0, 3.0, 4.0]
    assert grows_at_most_linearly(omegas, [0.5 * w for w in omegas])
    assert grows_at_most_linearly(omegas[:2], [0.0, 10.0])
    assert not grows_at_most_linearly(omegas, [w ** 3 for w in omegas])


def test_ratio_stability():
    assert ratio_stability([1.0, 1.5, 1.9])
    assert not ratio_stability([1.0, 3.0])
    assert not ratio_stability([0.0, math.inf])


def test_summary_table_puts_failures_last():
    rows = [{"i": 0, "status": "failed"}, {"i": 2, "status": "ok"}, {"i": 1, "status": "ok"}]
    df = summary_table(rows, sort_by=["i"])
    assert list(df["i"]) == [1, 2, 0]
    assert summary_table([]).empty


def test_pass_fraction():
    df = pd.DataFrame({"pass": [True, False, None, True]})
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert pass_fraction(df) == pytest.approx(0.5)
    assert pass_fraction(pd.DataFrame({"pass": [np.True_, np.False_]})) == pytest.approx(0.5)
    assert pass_fraction(pd.DataFrame()) == 0.0

