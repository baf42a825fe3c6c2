"""The pool-choosing game.

Each of ``m`` players picks a pool label ``1..m`` or stays independent
(``INDEPENDENT``).  Players sharing a label search jointly as one contestant
whose power is the sum of theirs; a winning pool splits the unit reward in
proportion to members' powers.  Utilities are therefore computed on the
reduced contest among groups, at the same solution count ``n``.

Player indices are 0-based; pool labels are 1-based names.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .contest import (
    DEFAULT_QUADRATURE,
    ContestSpec,
    PowerProfile,
    QuadratureConfig,
    win_probabilities,
)
from .errors import InvalidInputError

INDEPENDENT = None

PoolAction = Optional[int]
ActionProfile = tuple  # tuple[PoolAction, ...]

# Alternatives must beat the incumbent by more than this to count as better.
_TIE_TOL = 1e-14


def validate_actions(actions: Sequence[PoolAction], m: int) -> ActionProfile:
    actions = tuple(actions)
    if len(actions) != m:
        raise InvalidInputError(f"expected {m} actions, got {len(actions)}")
    for a in actions:
        if a is INDEPENDENT:
            continue
        if isinstance(a, bool) or not isinstance(a, int) or not 1 <= a <= m:
            raise InvalidInputError(f"pool label {a!r} outside 1..{m}")
    return actions


def format_action(a: PoolAction) -> str:
    return "I" if a is INDEPENDENT else str(a)


def parse_action(token: str) -> PoolAction:
    token = token.strip()
    if token.upper() in ("I", "⊥"):
        return INDEPENDENT
    try:
        return int(token)
    except ValueError:
        raise InvalidInputError(f"bad action token {token!r}; use a label 1..m or I")


@dataclass(frozen=True)
class PoolPartition:
    """Disjoint player groups covering every player, with their summed powers."""

    groups: tuple[tuple[int, ...], ...]
    group_power: tuple

    def __post_init__(self):
        if len(self.groups) != len(self.group_power):
            raise InvalidInputError("one power per group required")
        members = [i for g in self.groups for i in g]
        if any(len(g) == 0 for g in self.groups):
            raise InvalidInputError("groups must be nonempty")
        if sorted(members) != list(range(len(members))):
            raise InvalidInputError("groups must partition the players")

    @classmethod
    def from_groups(cls, groups: Sequence[Sequence[int]], powers: Sequence) -> "PoolPartition":
        groups = tuple(tuple(sorted(g)) for g in groups)
        return cls(groups, tuple(sum(powers[i] for i in g) for g in groups))

    def group_of(self) -> list[int]:
        owner = [0] * sum(len(g) for g in self.groups)
        for k, g in enumerate(self.groups):
            for i in g:
                owner[i] = k
        return owner


def partition_from_actions(actions: Sequence[PoolAction], powers: Sequence | None = None) -> PoolPartition:
    """Group players by label; independents become singletons.

    Groups are ordered by their smallest member.  Without ``powers`` every
    player counts as power 1 in ``group_power``.
    """
    m = len(actions)
    actions = validate_actions(actions, m)
    by_label: dict[int, list[int]] = {}
    groups: list[list[int]] = []
    for i, a in enumerate(actions):
        if a is INDEPENDENT:
            groups.append([i])
        elif a in by_label:
            by_label[a].append(i)
        else:
            by_label[a] = [i]
            groups.append(by_label[a])
    groups.sort(key=min)
    return PoolPartition.from_groups(groups, powers if powers is not None else [1] * m)


@dataclass(frozen=True)
class UtilityVector:
    u: tuple[float, ...]

    def __iter__(self):
        return iter(self.u)

    def __getitem__(self, i):
        return self.u[i]

    def __len__(self):
        return len(self.u)


def group_win_probabilities(
    spec: ContestSpec, partition: PoolPartition, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> tuple[float, ...]:
    """Winning probability of each group as one super-player."""
    if len(partition.groups) == 1:
        return (1.0,)
    powers = spec.profile.input_order()
    group_power = [sum(powers[i] for i in g) for g in partition.groups]
    reduced = ContestSpec(PowerProfile.from_powers(group_power), spec.n_solutions)
    return win_probabilities(reduced, cfg).p


def pool_utilities(
    spec: ContestSpec, partition: PoolPartition, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> UtilityVector:
    """Expected reward of every player: group win probability times power share."""
    powers = [float(x) for x in spec.profile.input_order()]
    if sum(len(g) for g in partition.groups) != len(powers):
        raise InvalidInputError("partition does not cover the contest's players")
    group_p = group_win_probabilities(spec, partition, cfg)
    u = [0.0] * len(powers)
    for g, pg in zip(partition.groups, group_p):
        total = math.fsum(powers[i] for i in g)
        for i in g:
            u[i] = powers[i] / total * pg
    return UtilityVector(tuple(u))


def utilities_for_actions(
    spec: ContestSpec, actions: Sequence[PoolAction], cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> UtilityVector:
    powers = spec.profile.input_order()
    return pool_utilities(spec, partition_from_actions(actions, powers), cfg)


def best_response(
    spec: ContestSpec,
    actions: Sequence[PoolAction],
    player: int,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> tuple[PoolAction, float]:
    """Best action for ``player`` with everyone else fixed, and its gain over the current action.

    Candidates are the ``m`` labels then ``INDEPENDENT``.  The current action
    wins ties, then the lowest label, then independence.
    """
    m = spec.m
    actions = list(validate_actions(actions, m))
    if not 0 <= player < m:
        raise InvalidInputError(f"player {player} outside 0..{m - 1}")
    current = actions[player]
    base = utilities_for_actions(spec, actions, cfg)[player]
    best_action, best_u = current, base
    for candidate in [*range(1, m + 1), INDEPENDENT]:
        if candidate == current:
            continue
        actions[player] = candidate
        u = utilities_for_actions(spec, actions, cfg)[player]
        if u > best_u + _TIE_TOL:
            best_action, best_u = candidate, u
    return best_action, best_u - base


@dataclass(frozen=True)
class EquilibriumReport:
    is_equilibrium: bool
    violations: tuple[tuple[int, PoolAction, float], ...]
    epsilon: float


def is_nash(
    spec: ContestSpec,
    actions: Sequence[PoolAction],
    epsilon: float = 1e-9,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> EquilibriumReport:
    """Certify ``actions`` against every unilateral deviation; gains up to ``epsilon`` are tolerated."""
    if not epsilon >= 0:
        raise InvalidInputError("epsilon must be nonnegative")
    violations = []
    for player in range(spec.m):
        action, gain = best_response(spec, actions, player, cfg)
        if gain > epsilon:
            violations.append((player, action, gain))
    return EquilibriumReport(not violations, tuple(violations), epsilon)


def predicted_equilibrium(profile: PowerProfile) -> ActionProfile:
    """Grand pool when the largest power is at most the rest combined, else the largest goes alone.

    Returned in input order; ties for the largest power go to the lowest input index.
    """
    powers = profile.input_order()
    m = len(powers)
    top = max(powers)
    leader = min(i for i in range(m) if powers[i] == top)
    rest = sum(powers[i] for i in range(m) if i != leader)
    if m > 1 and top <= rest:
        return tuple([1] * m)
    return tuple(INDEPENDENT if i == leader else 1 for i in range(m))


def check_superadditivity(
    spec: ContestSpec, group: Sequence[int], cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> tuple[float, float]:
    """``(pool_p, solo_sum)``: the group's probability when pooled versus its members' solo total."""
    group = sorted(set(group))
    m = spec.m
    if not group or any(not 0 <= i < m for i in group):
        raise InvalidInputError("group must be a nonempty set of player indices")
    solo = win_probabilities(spec, cfg).p
    solo_sum = math.fsum(solo[i] for i in group)
    if len(group) == 1:
        return solo[group[0]], solo_sum
    others = [[i] for i in range(m) if i not in group]
    partition = PoolPartition.from_groups([group, *others], spec.profile.input_order())
    pool_p = group_win_probabilities(spec, partition, cfg)[0]
    return pool_p, solo_sum


def pair_pooling_gains(
    spec: ContestSpec, i: int, j: int, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> tuple[float, float]:
    """Utility change for ``i`` and ``j`` from pooling together, everyone else solo."""
    m = spec.m
    if i == j or not (0 <= i < m and 0 <= j < m):
        raise InvalidInputError("need two distinct player indices")
    solo = win_probabilities(spec, cfg).p
    groups = [[i, j]] + [[k] for k in range(m) if k not in (i, j)]
    pooled = pool_utilities(spec, PoolPartition.from_groups(groups, spec.profile.input_order()), cfg)
    return pooled[i] - solo[i], pooled[j] - solo[j]


def check_merge_lemma(
    spec: ContestSpec, i: int, j: int, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> tuple[float, float]:
    """Gains of ``i`` and ``j`` from pooling, valid only when ``x_i + x_j`` is at most the largest other power.

    Raises:
        InvalidInputError: if the hypothesis fails.
    """
    powers = spec.profile.input_order()
    m = spec.m
    if i == j or not (0 <= i < m and 0 <= j < m):
        raise InvalidInputError("need two distinct player indices")
    others = [powers[k] for k in range(m) if k not in (i, j)]
    if not others or powers[i] + powers[j] > max(others):
        raise InvalidInputError("hypothesis x_i + x_j <= max other power does not hold")
    return pair_pooling_gains(spec, i, j, cfg)
