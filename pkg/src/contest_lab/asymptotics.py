"""How fast winning probabilities approach power shares as the solution count grows."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .contest import (
    DEFAULT_QUADRATURE,
    ContestSpec,
    PowerProfile,
    QuadratureConfig,
    win_probabilities,
)
from .errors import InvalidInputError, RefusedAnalysisError


@dataclass(frozen=True)
class GapCurve:
    """``per_player_gaps[k, i] = |p_i - x_i / sum(x)|`` at ``n_values[k]`` (players in input order)."""

    n_values: tuple[int, ...]
    gaps: tuple[float, ...]
    per_player_gaps: np.ndarray


@dataclass(frozen=True)
class DecayFit:
    slope: float
    intercept: float
    r_squared: float


def proportional_shares(profile: PowerProfile) -> np.ndarray:
    x = np.array([float(v) for v in profile.input_order()])
    return x / x.sum()


def gap_curve(
    profile: PowerProfile, n_values: Sequence[int], cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> GapCurve:
    """Distance from proportionality at every ``n``.

    Gaps smaller than the quadrature's own error bound are reported as exactly 0.
    """
    n_values = tuple(int(n) for n in n_values)
    if not n_values:
        raise InvalidInputError("n_values is empty")
    if any(n < 1 for n in n_values):
        raise InvalidInputError("every n must be at least 1")
    if any(a >= b for a, b in zip(n_values, n_values[1:])):
        raise InvalidInputError("n_values must be strictly increasing")
    share = proportional_shares(profile)
    rows = []
    for n in n_values:
        probs = win_probabilities(ContestSpec(profile, n), cfg)
        gap = np.abs(np.asarray(probs.p) - share)
        gap[gap <= probs.abs_error_bound] = 0.0
        rows.append(gap)
    per_player = np.array(rows)
    return GapCurve(n_values, tuple(float(g) for g in per_player.max(axis=1)), per_player)


def fit_decay_slope(curve: GapCurve) -> DecayFit:
    """Least-squares line through ``(ln n, ln gap)``.

    Raises:
        RefusedAnalysisError: on a zero gap (symmetric profiles have no decay to fit).
        InvalidInputError: with fewer than four points.
    """
    if len(curve.n_values) < 4:
        raise InvalidInputError("need at least four points to fit")
    gaps = np.asarray(curve.gaps, dtype=float)
    if np.any(gaps <= 0):
        raise RefusedAnalysisError("zero gap: log-log fit undefined (symmetric profile?)")
    ln_n = np.log(np.asarray(curve.n_values, dtype=float))
    ln_gap = np.log(gaps)
    slope, intercept = np.polyfit(ln_n, ln_gap, 1)
    resid = ln_gap - (slope * ln_n + intercept)
    ss_tot = float(np.sum((ln_gap - ln_gap.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return DecayFit(float(slope), float(intercept), min(1.0, max(0.0, r2)))
