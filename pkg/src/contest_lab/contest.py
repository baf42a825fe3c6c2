"""Winner-take-all computation contests: domain types and winning probabilities.

A contest has ``m`` players with computational powers ``x_i`` racing to find
one of ``n`` solutions by exhaustive search in independent random orders.
With ratios ``r_j = x_j / x_max`` and ``pi(z) = prod_j (1 - r_j z)``, player
``i`` wins with probability

    p_i = n * r_i * integral_0^1 pi(z)^n / (1 - r_i z) dz.

The integrand is a polynomial of degree ``m*n - 1`` and is integrated with a
Gauss-Legendre rule that is exact for that degree (composite panels above the
node cap).
"""

from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InvalidInputError, NumericalFailureError
from .quadrature import unit_rule

__all__ = [
    "PowerProfile",
    "ContestSpec",
    "DiscreteContestSpec",
    "Method",
    "WinProbabilities",
    "PolyFactors",
    "QuadratureConfig",
    "DEFAULT_QUADRATURE",
    "contest",
    "win_probabilities",
    "two_player_closed_form",
    "efficiency",
]


def _check_power(value) -> None:
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise InvalidInputError(f"power must be a real number, got {value!r}")
    as_float = float(value)
    if not math.isfinite(as_float) or not value > 0:
        raise InvalidInputError(f"power must be finite and strictly positive, got {value!r}")


@dataclass(frozen=True)
class PowerProfile:
    """Player powers stored in ascending order.

    ``original_index[k]`` is the input position of the k-th smallest power.
    Sorting is stable, so equal powers keep their input order.
    """

    powers: tuple
    original_index: tuple[int, ...]

    def __post_init__(self):
        if len(self.powers) < 1:
            raise InvalidInputError("a contest needs at least one player")
        if len(self.powers) != len(self.original_index):
            raise InvalidInputError("powers and original_index differ in length")
        for value in self.powers:
            _check_power(value)
        if sorted(self.original_index) != list(range(len(self.powers))):
            raise InvalidInputError("original_index must be a permutation")
        if any(a > b for a, b in zip(self.powers, self.powers[1:])):
            raise InvalidInputError("powers must be stored in ascending order")

    @classmethod
    def from_powers(cls, powers: Sequence) -> "PowerProfile":
        values = list(powers)
        if not values:
            raise InvalidInputError("a contest needs at least one player")
        for value in values:
            _check_power(value)
        order = sorted(range(len(values)), key=lambda k: values[k])
        return cls(tuple(values[k] for k in order), tuple(order))

    @property
    def m(self) -> int:
        return len(self.powers)

    def input_order(self) -> tuple:
        """Powers in the order they were supplied."""
        out = [None] * self.m
        for k, idx in enumerate(self.original_index):
            out[idx] = self.powers[k]
        return tuple(out)

    def to_input_order(self, sorted_values: Sequence) -> tuple:
        """Re-map a per-player sequence from sorted order to input order."""
        out = [None] * self.m
        for k, idx in enumerate(self.original_index):
            out[idx] = sorted_values[k]
        return tuple(out)

    def as_array(self) -> np.ndarray:
        """Sorted powers as float64."""
        return np.array([float(x) for x in self.powers])

    def total(self) -> float:
        return math.fsum(float(x) for x in self.powers)


@dataclass(frozen=True)
class ContestSpec:
    profile: PowerProfile
    n_solutions: int = 1

    def __post_init__(self):
        n = self.n_solutions
        if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 1:
            raise InvalidInputError(f"n_solutions must be a positive integer, got {n!r}")

    @property
    def m(self) -> int:
        return self.profile.m


@dataclass(frozen=True)
class DiscreteContestSpec:
    """Contest over a finite candidate set of size ``candidate_count``."""

    spec: ContestSpec
    candidate_count: int

    def __post_init__(self):
        big_n = self.candidate_count
        if isinstance(big_n, bool) or not isinstance(big_n, numbers.Integral):
            raise InvalidInputError("candidate_count must be an integer")
        if big_n < self.spec.n_solutions:
            raise InvalidInputError(
                f"candidate_count N={big_n} is smaller than n={self.spec.n_solutions}"
            )


def contest(powers: Sequence, n: int = 1) -> ContestSpec:
    """Shorthand for ``ContestSpec(PowerProfile.from_powers(powers), n)``."""
    return ContestSpec(PowerProfile.from_powers(powers), n)


class Method(str, enum.Enum):
    QUADRATURE = "quadrature"
    EXACT = "exact-rational"
    MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class WinProbabilities:
    """Per-player winning probabilities in input order."""

    p: tuple[float, ...]
    method: Method
    abs_error_bound: float
    exact: tuple[Fraction, ...] | None = field(default=None, compare=False)

    def __iter__(self):
        return iter(self.p)

    def __len__(self):
        return len(self.p)

    def __getitem__(self, i):
        return self.p[i]


@dataclass(frozen=True)
class PolyFactors:
    """Linear factors ``1 - r_j z`` of the product integrand, raised to ``exponent``."""

    ratios: tuple
    exponent: int

    def __post_init__(self):
        if not self.ratios or self.ratios[-1] != 1:
            raise InvalidInputError("last ratio must equal 1")
        if any(not 0 < r <= 1 for r in self.ratios):
            raise InvalidInputError("ratios must lie in (0, 1]")

    @classmethod
    def from_spec(cls, spec: ContestSpec) -> "PolyFactors":
        x = spec.profile.as_array()
        ratios = x / x[-1]
        ratios[-1] = 1.0
        return cls(tuple(float(r) for r in ratios), spec.n_solutions)

    def log_factors(self, z: np.ndarray) -> np.ndarray:
        """``log(1 - r_j z)`` for every factor (rows) and node (columns)."""
        return np.log1p(-np.outer(np.asarray(self.ratios), z))

    def integrands(self, z: np.ndarray) -> np.ndarray:
        """Row ``i`` holds ``n r_i pi_{-i}(z) pi(z)^(n-1)`` at the nodes ``z``.

        Evaluated in log space: ``(1 - r z)^n`` underflows for large ``n``.
        """
        n = self.exponent
        logs = self.log_factors(z)
        log_pi_n = n * logs.sum(axis=0)
        r = np.asarray(self.ratios)[:, None]
        return n * r * np.exp(log_pi_n[None, :] - logs)


@dataclass(frozen=True)
class QuadratureConfig:
    max_nodes: int = 32
    target_abs_error: float = 1e-10

    def __post_init__(self):
        if self.max_nodes < 2:
            raise InvalidInputError("max_nodes must be at least 2")
        if not self.target_abs_error > 0:
            raise InvalidInputError("target_abs_error must be positive")


DEFAULT_QUADRATURE = QuadratureConfig()


def node_count(m: int, n: int) -> int:
    """Nodes needed to integrate a degree ``m*n - 1`` polynomial exactly."""
    return math.ceil(m * n / 2) + 1


def win_probabilities(
    spec: ContestSpec, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> WinProbabilities:
    """Winning probability of every player, by Gauss-Legendre quadrature.

    Raises:
        NumericalFailureError: if the probabilities miss ``sum == 1`` by more
            than ``cfg.target_abs_error``. Results are never renormalised.
    """
    m, n = spec.m, spec.n_solutions
    if m == 1:
        return WinProbabilities((1.0,), Method.QUADRATURE, 0.0)

    factors = PolyFactors.from_spec(spec)
    z, w = unit_rule(node_count(m, n), cfg.max_nodes)
    weighted = factors.integrands(z) * w[None, :]
    p_sorted = [math.fsum(row) for row in weighted]

    residual = math.fsum(p_sorted) - 1.0
    if not abs(residual) <= cfg.target_abs_error:
        raise NumericalFailureError(
            f"probabilities sum to 1 {residual:+.3e} (tolerance {cfg.target_abs_error:.1e})",
            residual,
        )
    bound = abs(residual) + m * math.sqrt(len(z)) * np.finfo(float).eps
    return WinProbabilities(spec.profile.to_input_order(p_sorted), Method.QUADRATURE, bound)


def two_player_closed_form(x1: float, x2: float) -> tuple[float, float]:
    """Single-solution two-player probabilities: the weaker player wins ``x_weak / (2 x_strong)``."""
    for value in (x1, x2):
        _check_power(value)
    if x1 <= x2:
        p1 = x1 / (2 * x2)
        return p1, 1 - p1
    p2 = x2 / (2 * x1)
    return 1 - p2, p2


def efficiency(
    spec: ContestSpec, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> tuple[float, ...]:
    """Winning probability per unit of power, ``p_i / x_i``, in input order."""
    probs = win_probabilities(spec, cfg)
    return tuple(p / float(x) for p, x in zip(probs.p, spec.profile.input_order()))
