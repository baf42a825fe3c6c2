import math

import numpy as np
import pytest

from contest_lab import (
    GapCurve,
    InvalidInputError,
    McConfig,
    PowerProfile,
    RefusedAnalysisError,
    contest,
    fit_decay_slope,
    gap_curve,
    simplex_section_shares,
    win_probabilities,
)
from contest_lab.asymptotics import proportional_shares

POW2 = [2**k for k in range(0, 13)]


def prof(*xs):
    return PowerProfile.from_powers(xs)


def synthetic(ns, gaps):
    gaps = tuple(gaps)
    return GapCurve(tuple(ns), gaps, np.array(gaps)[:, None])


def test_gap_examples():
    curve = gap_curve(prof(1, 2), [1, 2])
    assert curve.gaps == pytest.approx((1 / 12, 1 / 24), abs=1e-12)
    assert curve.per_player_gaps[0] == pytest.approx((1 / 12, 1 / 12), abs=1e-12)


def test_equal_powers_have_zero_gap():
    curve = gap_curve(prof(2, 2, 2), [1, 10, 1000])
    assert curve.gaps == (0.0, 0.0, 0.0)
    with pytest.raises(RefusedAnalysisError):
        fit_decay_slope(gap_curve(prof(5, 5), [1, 2, 4, 8]))


def test_exact_power_law_slope():
    ns = [2**k for k in range(1, 13)]
    fit = fit_decay_slope(synthetic(ns, [0.3 / n for n in ns]))
    assert fit.slope == pytest.approx(-1.0, abs=1e-10)
    assert fit.intercept == pytest.approx(math.log(0.3), abs=1e-10)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)


def test_polylog_contamination_raises_slope():
    ns = [2**k for k in range(1, 13)]
    fit = fit_decay_slope(synthetic(ns, [0.3 * math.log(n) / n for n in ns]))
    assert -1 < fit.slope < -0.7


@pytest.mark.parametrize("powers", [(1, 2), (1, 2, 3, 4)])
def test_measured_decay(powers):
    fit = fit_decay_slope(gap_curve(prof(*powers), POW2[1:]))
    assert -1.3 <= fit.slope <= -0.8
    assert fit.r_squared >= 0.98


@pytest.mark.parametrize("powers", [(1, 2), (1, 1, 2), (1, 2, 3, 4)])
def test_gaps_non_increasing(powers):
    gaps = gap_curve(prof(*powers), POW2).gaps
    assert all(b <= a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-3


@pytest.mark.parametrize("powers", [(1, 2), (3, 1, 2), (0.5, 4, 4, 1)])
def test_gaps_consistent_with_direct_computation(powers):
    ns = [1, 3, 17, 300]
    curve = gap_curve(prof(*powers), ns)
    share = np.array(powers, dtype=float) / sum(powers)
    for row, n in zip(curve.per_player_gaps, ns):
        direct = np.abs(np.array(win_probabilities(contest(powers, n)).p) - share)
        assert row == pytest.approx(direct, abs=1e-12)
    assert proportional_shares(prof(*powers)) == pytest.approx(share, abs=1e-15)


def test_gap_curve_validation():
    for bad in ([], [0, 1], [2, 2], [4, 2]):
        with pytest.raises(InvalidInputError):
            gap_curve(prof(1, 2), bad)


def test_fit_needs_four_points():
    with pytest.raises(InvalidInputError):
        fit_decay_slope(gap_curve(prof(1, 2), [1, 2, 4]))


def test_refusal_is_an_invalid_input():
    assert issubclass(RefusedAnalysisError, InvalidInputError)


def test_simplex_limit_is_proportional():
    est = simplex_section_shares(prof(1, 2, 3, 4), McConfig(400_000, seed=21))
    for p, h, s in zip(est.p_hat, est.half_width, proportional_shares(prof(1, 2, 3, 4))):
        assert abs(p - s) <= h
