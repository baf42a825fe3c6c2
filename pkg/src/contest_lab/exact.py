"""Exact rational winning probabilities by polynomial expansion.

Ground truth for the quadrature path on small instances: every coefficient of
``n r_i pi_{-i}(z) pi(z)^(n-1)`` is expanded as a Fraction and integrated
term by term over [0, 1].
"""

from __future__ import annotations

import decimal
import math
import numbers
from fractions import Fraction
from typing import Sequence

from .contest import ContestSpec, Method, WinProbabilities
from .errors import InvalidInputError, UnsupportedSizeError

DEFAULT_SIZE_CAP = 64

Poly = list  # coefficients, lowest degree first


def as_fraction(value) -> Fraction:
    """Exact rational for ``value``.

    Floats are read through their shortest decimal repr, so ``0.1`` becomes
    ``1/10`` rather than the nearest binary fraction.
    """
    if isinstance(value, bool):
        raise InvalidInputError(f"not a power: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, decimal.Decimal):
        if not value.is_finite():
            raise InvalidInputError(f"non-finite power {value!r}")
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InvalidInputError(f"non-finite power {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"not a rational literal: {value!r}") from exc
    raise InvalidInputError(
        f"power {value!r} has no exact rational form; scale it to a rational first"
    )


def poly_mul(a: Poly, b: Poly) -> Poly:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def poly_pow(a: Poly, k: int) -> Poly:
    result: Poly = [Fraction(1)]
    base = a
    while k:
        if k & 1:
            result = poly_mul(result, base)
        k >>= 1
        if k:
            base = poly_mul(base, base)
    return result


def divide_linear(a: Poly, r: Fraction) -> Poly:
    """Quotient of ``a(z)`` by ``(1 - r z)``; the division must be exact."""
    # a = (1 - r z) q  =>  q_0 = a_0, q_k = a_k + r q_{k-1}
    q = [Fraction(0)] * (len(a) - 1)
    carry = Fraction(0)
    for k in range(len(a) - 1):
        carry = a[k] + r * carry
        q[k] = carry
    if a[-1] + r * carry != 0:
        raise ArithmeticError("polynomial is not divisible by the linear factor")
    return q


def integrate_unit(a: Poly) -> Fraction:
    return sum((c / (k + 1) for k, c in enumerate(a)), Fraction(0))


def exact_probabilities(powers: Sequence, n: int) -> list[Fraction]:
    """Winning probabilities for ascending ``powers`` as exact rationals."""
    xs = [as_fraction(x) for x in powers]
    if len(xs) == 1:
        return [Fraction(1)]
    top = max(xs)
    ratios = [x / top for x in xs]
    pi: Poly = [Fraction(1)]
    for r in ratios:
        pi = poly_mul(pi, [Fraction(1), -r])
    pi_rest = poly_pow(pi, n - 1)
    cache: dict[Fraction, Fraction] = {}
    out = []
    for r in ratios:
        if r not in cache:
            integrand = poly_mul(divide_linear(pi, r), pi_rest)
            cache[r] = n * r * integrate_unit(integrand)
        out.append(cache[r])
    return out


def win_probabilities_exact(spec: ContestSpec, size_cap: int = DEFAULT_SIZE_CAP) -> WinProbabilities:
    """Exact-rational counterpart of :func:`contest_lab.contest.win_probabilities`.

    Raises:
        UnsupportedSizeError: if ``m * n`` exceeds ``size_cap``.
        InvalidInputError: if a power has no exact rational form.
    """
    m, n = spec.m, spec.n_solutions
    if m * n > size_cap:
        raise UnsupportedSizeError(f"m*n = {m * n} exceeds the exact-path cap {size_cap}")
    exact_sorted = exact_probabilities(spec.profile.powers, n)
    if sum(exact_sorted) != 1:
        raise ArithmeticError("exact probabilities do not sum to one")
    exact = spec.profile.to_input_order(exact_sorted)
    # only rounding to float contributes error
    bound = m * 2.0**-53
    return WinProbabilities(tuple(float(f) for f in exact), Method.EXACT, bound, exact=exact)
