"""Reference computations that share no code path with the library.

* ``symbolic_probabilities`` integrates the first-hit density directly in the
  original time variable with sympy (no substitution, no product-form
  polynomial, no quadrature).
* ``scipy_single_solution`` does the same numerically with adaptive quadrature.
* ``discrete_two_player`` enumerates the finite-candidate model exactly.
* ``rejection_simplex_shares`` samples the simplex by rejection from the cube.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

import numpy as np
import sympy
from scipy import integrate


def symbolic_probabilities(powers, n):
    """Exact ``Pr[player i finishes first]`` via sympy.

    ``t_i`` has density ``n (1-t)^(n-1)``; player ``i`` wins at ``t_i = t`` iff
    every other ``t_j >= t x_j / x_i``, which has probability
    ``max(0, 1 - t x_j / x_i)^n``.
    """
    t = sympy.symbols("t", nonnegative=True)
    xs = [sympy.Rational(str(Fraction(x))) for x in powers]
    out = []
    for i, xi in enumerate(xs):
        # factors (1 - t x_j / x_i) stay nonnegative up to min_j x_i / x_j
        upper = min([sympy.Integer(1)] + [xi / xj for j, xj in enumerate(xs) if j != i])
        integrand = n * (1 - t) ** (n - 1)
        for j, xj in enumerate(xs):
            if j != i:
                integrand *= (1 - t * xj / xi) ** n
        val = sympy.integrate(sympy.expand(integrand), (t, 0, upper))
        out.append(Fraction(int(sympy.numer(val)), int(sympy.denom(val))))
    return out


def scipy_single_solution(powers, n=1):
    """Adaptive-quadrature version of the same first-hit integral (floats)."""
    xs = np.asarray(powers, dtype=float)
    out = []
    for i, xi in enumerate(xs):
        others = np.delete(xs, i)
        upper = min(1.0, float(np.min(xi / others))) if others.size else 1.0

        def f(t):
            return n * (1 - t) ** (n - 1) * np.prod((1 - t * others / xi) ** n)

        val, _ = integrate.quad(f, 0.0, upper, epsabs=1e-14, epsrel=1e-13, limit=200)
        out.append(val)
    return out


def discrete_first_hit_pmf(n, big_n):
    """Exact pmf of the first of ``n`` solutions among ``N`` shuffled candidates, positions ``1..N``."""
    denom = comb(big_n, n)
    # tail[k] = Pr[K > k] for k = 0..N
    tail = np.array([comb(big_n - k, n) / denom for k in range(big_n + 1)])
    pmf = tail[:-1] - tail[1:]
    return pmf  # index 0 <-> position 1


def discrete_two_player(x1, x2, n, big_n):
    """Exact win probability of player 1 in the discrete model, ties split evenly.

    Player 1 finishes at ``K1 / x1``; for integer-ratio powers ties are exact.
    """
    pmf = discrete_first_hit_pmf(n, big_n)
    pos = np.arange(1, big_n + 1)
    cdf2 = np.cumsum(pmf)  # Pr[K2 <= k]
    p = 0.0
    for k1, w in zip(pos, pmf):
        if w == 0:
            continue
        thresh = Fraction(int(k1) * Fraction(x2)) / Fraction(x1)  # K2 > thresh => player 1 strictly first
        fl = int(thresh)
        below = cdf2[min(fl, big_n) - 1] if fl >= 1 else 0.0
        tie = pmf[fl - 1] if thresh == fl and 1 <= fl <= big_n else 0.0
        p += w * ((1.0 - below) + 0.5 * tie)
    return p


def rejection_simplex_shares(powers, samples, seed):
    """Uniform points on the simplex by rejection from the unit cube; share of each argmin."""
    rng = np.random.default_rng(seed)
    x = np.asarray(powers, dtype=float)
    m = x.size
    counts = np.zeros(m, dtype=np.int64)
    got = 0
    while got < samples:
        u = rng.random((samples, m - 1))
        u = u[u.sum(axis=1) <= 1.0][: samples - got]
        t = np.column_stack([u, 1.0 - u.sum(axis=1)])
        counts += np.bincount(np.argmin(t / x, axis=1), minlength=m)
        got += len(u)
    return counts / samples
