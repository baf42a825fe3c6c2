"""Repeated contests with rewards reinvested as computational power.

Each round pays out one unit of reward; a player receiving reward ``r`` gains
``eta * r`` power before the next round.  In expected mode the reward vector is
the winning-probability (or pooled-utility) vector; in stochastic mode one
realised winner takes the whole unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .contest import (
    DEFAULT_QUADRATURE,
    ContestSpec,
    PowerProfile,
    QuadratureConfig,
    win_probabilities,
)
from .errors import InvalidInputError
from .pooling import (
    PoolAction,
    PoolPartition,
    partition_from_actions,
    pool_utilities,
    predicted_equilibrium,
    validate_actions,
)
from .sampling import STREAM_DYNAMICS, contest_winners

MODES = ("expected", "stochastic")
POOLING = ("none", "fixed", "re-equilibrate")


@dataclass(frozen=True)
class DynamicsConfig:
    rounds: int
    reinvest_rate: float = 1.0
    mode: str = "expected"
    pooling: str = "none"
    fixed_actions: Optional[tuple[PoolAction, ...]] = None
    seed: int = 0

    def __post_init__(self):
        if isinstance(self.rounds, bool) or not isinstance(self.rounds, int) or self.rounds < 1:
            raise InvalidInputError("rounds must be a positive integer")
        if not (math.isfinite(self.reinvest_rate) and self.reinvest_rate > 0):
            raise InvalidInputError("reinvest_rate must be positive and finite")
        if self.mode not in MODES:
            raise InvalidInputError(f"mode must be one of {MODES}")
        if self.pooling not in POOLING:
            raise InvalidInputError(f"pooling must be one of {POOLING}")
        if (self.pooling == "fixed") != (self.fixed_actions is not None):
            raise InvalidInputError("fixed_actions is required exactly when pooling='fixed'")


@dataclass(frozen=True)
class RoundRecord:
    """State after ``round`` reinvestments (round 0 is the initial profile)."""

    round: int
    powers: tuple[float, ...]
    rewards: tuple[float, ...]
    winner: Optional[int]
    shares: tuple[float, ...]
    max_share: float
    min_ratio: float


@dataclass(frozen=True)
class DynamicsTrace:
    records: tuple[RoundRecord, ...]
    n_solutions: int
    config: DynamicsConfig

    def __len__(self):
        return len(self.records)

    def __getitem__(self, k):
        return self.records[k]

    def powers(self) -> np.ndarray:
        return np.array([r.powers for r in self.records])


def _record(k: int, powers: Sequence[float], rewards, winner) -> RoundRecord:
    total = math.fsum(powers)
    shares = tuple(x / total for x in powers)
    return RoundRecord(
        round=k,
        powers=tuple(powers),
        rewards=tuple(rewards),
        winner=winner,
        shares=shares,
        max_share=max(shares),
        min_ratio=min(powers) / max(powers),
    )


def step_expected(
    spec: ContestSpec, eta: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> PowerProfile:
    """Powers after one round of reinvesting expected rewards, ``x_i + eta * p_i``."""
    if not eta > 0:
        raise InvalidInputError("eta must be positive")
    p = win_probabilities(spec, cfg).p
    powers = [float(x) + eta * pi for x, pi in zip(spec.profile.input_order(), p)]
    return PowerProfile.from_powers(powers)


def _partition(powers: list[float], dcfg: DynamicsConfig) -> Optional[PoolPartition]:
    if dcfg.pooling == "none":
        return None
    if dcfg.pooling == "fixed":
        actions = validate_actions(dcfg.fixed_actions, len(powers))
    else:
        actions = predicted_equilibrium(PowerProfile.from_powers(powers))
    return partition_from_actions(actions, powers)


def _expected_rewards(spec, partition, cfg) -> tuple[float, ...]:
    if partition is None:
        return win_probabilities(spec, cfg).p
    return pool_utilities(spec, partition, cfg).u


def _stochastic_rewards(powers, partition, n, seed, k):
    m = len(powers)
    if partition is None:
        partition = PoolPartition.from_groups([[i] for i in range(m)], powers)
    group_power = [math.fsum(powers[i] for i in g) for g in partition.groups]
    g = int(contest_winners(group_power, n, seed, k, 1, stream=STREAM_DYNAMICS)[0])
    rewards = [0.0] * m
    for i in partition.groups[g]:
        rewards[i] = powers[i] / group_power[g]
    winner = partition.groups[g][0] if len(partition.groups[g]) == 1 else None
    return rewards, winner


def run(
    spec: ContestSpec, dcfg: DynamicsConfig, qcfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> DynamicsTrace:
    """Simulate ``dcfg.rounds`` contests with reinvestment and record every state."""
    n = spec.n_solutions
    eta = dcfg.reinvest_rate
    powers = [float(x) for x in spec.profile.input_order()]
    if dcfg.pooling == "fixed":
        validate_actions(dcfg.fixed_actions, len(powers))
    records = [_record(0, powers, [0.0] * len(powers), None)]
    for k in range(1, dcfg.rounds + 1):
        partition = _partition(powers, dcfg)
        if dcfg.mode == "expected":
            current = ContestSpec(PowerProfile.from_powers(powers), n)
            rewards, winner = _expected_rewards(current, partition, qcfg), None
        else:
            rewards, winner = _stochastic_rewards(powers, partition, n, dcfg.seed, k)
        powers = [x + eta * r for x, r in zip(powers, rewards)]
        records.append(_record(k, powers, rewards, winner))
    return DynamicsTrace(tuple(records), n, dcfg)


@dataclass(frozen=True)
class DominanceSummary:
    max_share: tuple[float, ...]
    herfindahl: tuple[float, ...]
    rounds_to_threshold: Optional[int]
    threshold: float


def dominance_metrics(trace: DynamicsTrace, threshold: float = 0.51) -> DominanceSummary:
    """Per-round largest share, Herfindahl index, and first round with a share at or above ``threshold``."""
    if not len(trace):
        raise InvalidInputError("empty trace")
    max_share = tuple(r.max_share for r in trace.records)
    herfindahl = tuple(math.fsum(s * s for s in r.shares) for r in trace.records)
    first = next((r.round for r in trace.records if r.max_share >= threshold), None)
    return DominanceSummary(max_share, herfindahl, first, threshold)
