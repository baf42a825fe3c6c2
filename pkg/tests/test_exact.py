from decimal import Decimal
from fractions import Fraction as F

import pytest

from contest_lab import (
    InvalidInputError,
    Method,
    UnsupportedSizeError,
    contest,
    simulate_contest_continuous,
    win_probabilities_exact,
)
from contest_lab.exact import as_fraction, divide_linear, poly_mul, poly_pow
from contest_lab.sampling import McConfig

from golden import GOLDEN, GOLDEN_IDS
from oracles import symbolic_probabilities


def test_one_three_matches_triangle_area():
    probs = win_probabilities_exact(contest([1, 3]))
    assert probs.exact == (F(1, 6), F(5, 6))
    assert probs.method is Method.EXACT


@pytest.mark.parametrize("n", [1, 4, 30])
def test_single_player(n):
    assert win_probabilities_exact(contest([7], n)).exact == (F(1),)


def test_one_one_two():
    assert win_probabilities_exact(contest([1, 1, 2])).exact == (F(5, 24), F(5, 24), F(7, 12))


@pytest.mark.parametrize("powers,n,expected", GOLDEN, ids=GOLDEN_IDS)
def test_golden_exact(powers, n, expected):
    probs = win_probabilities_exact(contest(powers, n))
    assert probs.exact == expected
    assert sum(probs.exact) == 1


@pytest.mark.parametrize("powers,n", [((3, 7, 2), 2), ((F(1, 2), F(1, 3)), 3), ((1, 1, 5, 6), 1)])
def test_agrees_with_symbolic_oracle(powers, n):
    assert list(win_probabilities_exact(contest(powers, n)).exact) == symbolic_probabilities(powers, n)


def test_monte_carlo_cross_check():
    est = simulate_contest_continuous(contest([1, 1, 2]), McConfig(400_000, seed=11))
    exact = win_probabilities_exact(contest([1, 1, 2])).p
    for p_hat, h, p in zip(est.p_hat, est.half_width, exact):
        assert abs(p_hat - p) <= h


def test_size_cap():
    with pytest.raises(UnsupportedSizeError):
        win_probabilities_exact(contest([1, 2, 3, 4], 17))
    win_probabilities_exact(contest([1, 2, 3, 4], 16))
    win_probabilities_exact(contest([1, 2], 40), size_cap=80)


def test_float_powers_read_as_decimals():
    assert as_fraction(0.1) == F(1, 10)
    assert win_probabilities_exact(contest([0.5, 1.5])).exact == (F(1, 6), F(5, 6))


def test_rational_inputs():
    assert as_fraction(Decimal("2.25")) == F(9, 4)
    assert as_fraction("3/7") == F(3, 7)
    assert as_fraction(5) == F(5)


@pytest.mark.parametrize("bad", [complex(1, 1), float("inf"), Decimal("NaN"), "pi", True, object()])
def test_non_rational_rejected(bad):
    with pytest.raises(InvalidInputError):
        as_fraction(bad)


def test_polynomial_helpers():
    a = [F(1), F(-1, 2)]
    sq = poly_mul(a, a)
    assert sq == [F(1), F(-1), F(1, 4)]
    assert poly_pow(a, 3) == poly_mul(sq, a)
    assert divide_linear(sq, F(1, 2)) == a
    with pytest.raises(ArithmeticError):
        divide_linear(sq, F(1, 3))
