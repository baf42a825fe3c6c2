"""Seeded Monte Carlo estimates of winning probabilities.

Every block of ``BLOCK_TRIALS`` trials draws from its own Philox stream whose
counter is pinned to ``(block, stream)`` and whose key is the user seed.  Trial
``t`` of a block always consumes the same counter positions, so results are
bit-identical however many threads process the blocks.

Within a block, row ``t`` of the uniform matrix belongs to trial ``t`` and
column ``i`` to player ``i`` (input order); one extra uniform per trial breaks
ties.  The continuous and discrete samplers share this layout, so equal seeds
give coupled (common random number) runs.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.special import gammaln

from .contest import ContestSpec, DiscreteContestSpec, PowerProfile
from .errors import InvalidInputError

BLOCK_TRIALS = 1 << 16
THREADS_ENV = "CONTEST_LAB_THREADS"

STREAM_CONTEST = 0
STREAM_SIMPLEX = 1
STREAM_DYNAMICS = 2

_SEED_LIMIT = 1 << 64


@dataclass(frozen=True)
class McConfig:
    trials: int
    seed: int = 0
    confidence_z: float = 3.0

    def __post_init__(self):
        if isinstance(self.trials, bool) or not isinstance(self.trials, int) or self.trials < 1:
            raise InvalidInputError("trials must be a positive integer")
        if not isinstance(self.seed, int) or not 0 <= self.seed < _SEED_LIMIT:
            raise InvalidInputError("seed must be an unsigned 64-bit integer")
        if not self.confidence_z > 0:
            raise InvalidInputError("confidence_z must be positive")


@dataclass(frozen=True)
class McEstimate:
    """Win frequencies with normal-approximation half-widths.

    ``wins`` holds the integer counts; they always sum to ``trials``.
    """

    p_hat: tuple[float, ...]
    half_width: tuple[float, ...]
    trials: int
    seed: int
    wins: tuple[int, ...]


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise InvalidInputError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
        if value < 1:
            raise InvalidInputError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
        return value
    return os.cpu_count() or 1


def block_generator(seed: int, block: int, stream: int = STREAM_CONTEST) -> np.random.Generator:
    """Counter-based generator for one block of trials."""
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, block, stream, 0]))


def sample_first_hit_continuous(n: int, u):
    """First-solution index ``1 - u**(1/n)``: the minimum of ``n`` uniforms via inverse CDF."""
    if n < 1:
        raise InvalidInputError("n must be at least 1")
    u = np.asarray(u, dtype=float)
    t = -np.expm1(np.log(u) / n)
    return float(t) if t.ndim == 0 else t


def _log_tail(k: np.ndarray, n: int, big_n: int) -> np.ndarray:
    """``log Pr[first hit > k] = log C(N-k, n) - log C(N, n)``; ``-inf`` once ``N-k < n``."""
    k = np.asarray(k, dtype=float)
    rest = big_n - k
    out = np.full(k.shape, -np.inf)
    ok = rest >= n
    r = rest[ok]
    out[ok] = (gammaln(r + 1) - gammaln(r - n + 1)) - (gammaln(big_n + 1.0) - gammaln(big_n - n + 1.0))
    return out


def _exact_first_hit(n: int, big_n: int, u: float, k: int) -> int:
    num, den = Fraction(u).as_integer_ratio()
    total = math.comb(big_n, n)

    def tail_le_u(j):
        return math.comb(big_n - j, n) * den <= num * total

    last = big_n - n + 1
    while k > 1 and tail_le_u(k - 1):
        k -= 1
    while k < last and not tail_le_u(k):
        k += 1
    return k


def sample_first_hit_discrete(n: int, big_n: int, u):
    """Position in ``1..N`` of the first of ``n`` solutions placed without replacement.

    Inverts the tail ``Pr[K > k] = C(N-k, n) / C(N, n)``: returns the smallest
    ``k >= 1`` with tail at most ``u``.
    """
    if n < 1 or big_n < n:
        raise InvalidInputError("need 1 <= n <= N")
    u = np.asarray(u, dtype=float)
    scalar = u.ndim == 0
    u = np.atleast_1d(u)
    log_u = np.log(u)
    last = big_n - n + 1
    guess = np.ceil(big_n * -np.expm1(log_u / n))
    k = np.clip(guess, 1, last)
    while True:
        step_down = (k > 1) & (_log_tail(k - 1, n, big_n) <= log_u)
        if not step_down.any():
            break
        k[step_down] -= 1
    while True:
        step_up = (k < last) & (_log_tail(k, n, big_n) > log_u)
        if not step_up.any():
            break
        k[step_up] += 1
    k = k.astype(np.int64)
    # gammaln is only good to a few ulps; settle near-boundary draws exactly
    near = (np.abs(_log_tail(k - 1, n, big_n) - log_u) < 1e-9) | (
        np.abs(_log_tail(k, n, big_n) - log_u) < 1e-9
    )
    for idx in np.flatnonzero(near):
        k[idx] = _exact_first_hit(n, big_n, float(u[idx]), int(k[idx]))
    return int(k[0]) if scalar else k


def pick_winners(times: np.ndarray, tie_u: np.ndarray) -> np.ndarray:
    """Row-wise argmin of ``times``; ties go to a uniformly chosen argmin."""
    best = times.min(axis=1)
    tied = times == best[:, None]
    counts = tied.sum(axis=1)
    pick = np.minimum((tie_u * counts).astype(np.int64), counts - 1)
    rank = np.cumsum(tied, axis=1) - 1
    return np.argmax(tied & (rank == pick[:, None]), axis=1)


def _block_sizes(trials: int):
    full, rest = divmod(trials, BLOCK_TRIALS)
    sizes = [BLOCK_TRIALS] * full
    if rest:
        sizes.append(rest)
    return sizes


def _run_blocks(
    block_fn: Callable[[int, int], np.ndarray], trials: int, m: int, threads: int | None
) -> np.ndarray:
    sizes = _block_sizes(trials)
    threads = default_threads() if threads is None else threads
    if threads < 1:
        raise InvalidInputError("threads must be positive")
    jobs = list(enumerate(sizes))
    if threads == 1 or len(jobs) == 1:
        results = [block_fn(b, size) for b, size in jobs]
    else:
        with ThreadPoolExecutor(max_workers=min(threads, len(jobs))) as pool:
            results = list(pool.map(lambda job: block_fn(*job), jobs))
    wins = np.zeros(m, dtype=np.int64)
    for counts in results:
        wins += counts
    return wins


def _estimate(wins: np.ndarray, mc: McConfig) -> McEstimate:
    trials = mc.trials
    if int(wins.sum()) != trials:
        raise AssertionError("every trial must produce exactly one winner")
    p_hat = wins / trials
    half = mc.confidence_z * np.sqrt(p_hat * (1 - p_hat) / trials)
    return McEstimate(
        tuple(float(p) for p in p_hat),
        tuple(float(h) for h in half),
        trials,
        mc.seed,
        tuple(int(c) for c in wins),
    )


def _powers(spec: ContestSpec) -> np.ndarray:
    return np.array([float(x) for x in spec.profile.input_order()])


def contest_winners(
    powers: Sequence[float],
    n: int,
    seed: int,
    block: int,
    size: int,
    candidate_count: int | None = None,
    stream: int = STREAM_CONTEST,
) -> np.ndarray:
    """Winner index (input order) of each of ``size`` trials in one block."""
    x = np.asarray(powers, dtype=float)
    gen = block_generator(seed, block, stream)
    u = 1.0 - gen.random((size, x.size))
    tie_u = gen.random(size)
    if candidate_count is None:
        hits = sample_first_hit_continuous(n, u)
    else:
        hits = sample_first_hit_discrete(n, candidate_count, u.ravel()).reshape(u.shape)
    return pick_winners(hits / x[None, :], tie_u)


def simulate_contest_continuous(
    spec: ContestSpec, mc: McConfig, threads: int | None = None
) -> McEstimate:
    """Monte Carlo win frequencies; the winner minimises ``t_i / x_i``."""
    x = _powers(spec)
    n = spec.n_solutions

    def block(b, size):
        winners = contest_winners(x, n, mc.seed, b, size)
        return np.bincount(winners, minlength=x.size)

    return _estimate(_run_blocks(block, mc.trials, x.size, threads), mc)


def simulate_contest_discrete(
    dspec: DiscreteContestSpec, mc: McConfig, threads: int | None = None
) -> McEstimate:
    """Like :func:`simulate_contest_continuous` over ``N`` candidates; positions tie with positive probability."""
    spec = dspec.spec
    x = _powers(spec)
    n, big_n = spec.n_solutions, dspec.candidate_count

    def block(b, size):
        winners = contest_winners(x, n, mc.seed, b, size, candidate_count=big_n)
        return np.bincount(winners, minlength=x.size)

    return _estimate(_run_blocks(block, mc.trials, x.size, threads), mc)


def simplex_section_shares(
    profile: PowerProfile, mc: McConfig, threads: int | None = None
) -> McEstimate:
    """Share of the unit simplex where each player has the smallest ``t_i / x_i``.

    Points are uniform on ``{t >= 0, sum t = 1}`` via normalised exponential
    spacings; the normalisation is skipped because it does not change the argmin.
    """
    if profile.m < 2:
        raise InvalidInputError("simplex shares need at least two players")
    x = np.array([float(v) for v in profile.input_order()])

    def block(b, size):
        gen = block_generator(mc.seed, b, STREAM_SIMPLEX)
        e = gen.standard_exponential((size, x.size))
        tie_u = gen.random(size)
        winners = pick_winners(e / x[None, :], tie_u)
        return np.bincount(winners, minlength=x.size)

    return _estimate(_run_blocks(block, mc.trials, x.size, threads), mc)


def standard_errors(est: McEstimate) -> tuple[float, ...]:
    return tuple(math.sqrt(p * (1 - p) / est.trials) for p in est.p_hat)
