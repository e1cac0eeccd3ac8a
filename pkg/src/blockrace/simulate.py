"""Monte Carlo fork races, block by block.

Each trial replays the race explicitly: phase 1 mines until the main branch
has ``n`` blocks, then the deficit walk runs until the hider reaches the
required lead or falls more than ``max_deficit`` blocks behind.  The walks
are unbounded in principle; the cutoff loses at most
``(q / (1 - q)) ** (max_deficit + r)`` of probability mass for q < 1/2
(see :func:`truncation_bias_bound`).

When the walking side holds at least half the hash power the cutoff is
raised to :data:`MAJORITY_MAX_DEFICIT` and truncated trials still count as
failures, so estimates in that regime are lower bounds.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .analytic import _integer, hash_share, q_effective, tie_split

__all__ = [
    "DEFAULT_MAX_DEFICIT",
    "MAJORITY_MAX_DEFICIT",
    "RaceConfig",
    "McEstimate",
    "truncation_bias_bound",
    "effective_cap",
    "simulate_type1",
    "simulate_type0",
    "simulate_catchup",
    "sample_secret_lengths",
    "uniform_stream",
]

DEFAULT_MAX_DEFICIT = 200
MAJORITY_MAX_DEFICIT = 10_000
CHUNK = 1 << 16
_SEED_LIMIT = 1 << 64


def _seed(seed) -> np.uint64:
    seed = _integer(seed, "seed", 0)
    if seed >= _SEED_LIMIT:
        raise ValueError(f"seed must fit in 64 bits, got {seed}")
    return np.uint64(seed)


@dataclass(frozen=True)
class RaceConfig:
    """Parameters of one simulated experiment.

    ``gamma`` is only used by Type 0 races.  ``premine`` (0 or 1) secret
    blocks exist before the main branch starts counting confirmations.
    """

    q: float
    gamma: float = 0.0
    n: int = 1
    r: int = 1
    premine: int = 0
    max_deficit: int = DEFAULT_MAX_DEFICIT
    trials: int = 100_000
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "q", hash_share(self.q))
        object.__setattr__(self, "gamma", tie_split(self.gamma))
        object.__setattr__(self, "n", _integer(self.n, "n", 1))
        object.__setattr__(self, "r", _integer(self.r, "r", 0))
        premine = _integer(self.premine, "premine", 0)
        if premine > 1:
            raise ValueError(f"premine must be 0 or 1, got {premine}")
        object.__setattr__(self, "premine", premine)
        object.__setattr__(self, "max_deficit", _integer(self.max_deficit, "max_deficit", 1))
        object.__setattr__(self, "trials", _integer(self.trials, "trials", 1))
        _seed(self.seed)
        object.__setattr__(self, "seed", int(self.seed))

    @property
    def bias_bound(self) -> float:
        return truncation_bias_bound(self.q, self.r, self.max_deficit)


@dataclass(frozen=True)
class McEstimate:
    successes: int
    trials: int
    blocks: int = 0

    @property
    def p_hat(self) -> float:
        return self.successes / self.trials

    @property
    def std_err(self) -> float:
        p = self.p_hat
        return math.sqrt(p * (1.0 - p) / self.trials)

    def __add__(self, other: McEstimate) -> McEstimate:
        return McEstimate(
            self.successes + other.successes,
            self.trials + other.trials,
            self.blocks + other.blocks,
        )

    def z_score(self, expected: float) -> float:
        """Discrepancy from ``expected`` in standard errors.

        A degenerate estimate (p_hat of 0 or 1) has no spread: it scores 0
        when it equals ``expected`` and infinity otherwise.
        """
        diff = self.p_hat - expected
        if self.std_err == 0.0:
            return 0.0 if diff == 0.0 else math.copysign(math.inf, diff)
        return diff / self.std_err

    def agrees(self, expected: float, sigmas: float = 4.0) -> bool:
        return abs(self.p_hat - expected) <= sigmas * self.std_err


def truncation_bias_bound(q, r: int, max_deficit: int) -> float:
    """Upper bound on probability lost to the deficit cutoff (q < 1/2)."""
    q = hash_share(q)
    if q >= 0.5:
        return math.inf
    return (q / (1.0 - q)) ** (max_deficit + r)


def effective_cap(max_deficit: int, q: float) -> int:
    return max(max_deficit, MAJORITY_MAX_DEFICIT) if q >= 0.5 else max_deficit


def _run(kernel, trials: int, workers: int, *args) -> McEstimate:
    spans = [(lo, min(lo + CHUNK, trials)) for lo in range(0, trials, CHUNK)]

    def one(span):
        wins, blocks = kernel(args[0], span[0], span[1], *args[1:])
        return McEstimate(int(wins), span[1] - span[0], int(blocks))

    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, spans))
    else:
        parts = [one(span) for span in spans]
    return sum(parts[1:], parts[0])


def simulate_type1(config: RaceConfig, workers: int = 1) -> McEstimate:
    """Estimate the chance that the hider overtakes ``n`` confirmations by ``r``.

    With ``premine=0`` this converges to ``revocation_prob(n, r, q)``; with
    ``premine=1, r=1`` to ``double_spend_prob(n, q)``.  At q = 1 the main
    branch never completes phase 1; the race is then reported as won in every
    trial without simulating.
    """
    c = config
    if c.q == 1.0:
        return McEstimate(c.trials, c.trials)
    return _run(
        _kernels.type1_range,
        c.trials,
        workers,
        _seed(c.seed),
        c.n,
        c.r,
        c.q,
        c.premine,
        effective_cap(c.max_deficit, c.q),
    )


def simulate_type0(config: RaceConfig, workers: int = 1) -> McEstimate:
    """Estimate the success of publishing at a tie on the next block.

    The hider races to a tie against the first main block, then the
    coalition (share ``q + gamma (1 - q)``) needs a one-block lead.  Only
    ``n = 1`` is modelled; ``r`` is ignored.
    """
    c = config
    if c.n != 1:
        raise ValueError("Type 0 races are defined on the first block only (n=1)")
    if c.q == 1.0:
        return McEstimate(c.trials, c.trials)
    q_eff = q_effective(c.q, c.gamma)
    return _run(
        _kernels.type0_range,
        c.trials,
        workers,
        _seed(c.seed),
        c.q,
        q_eff,
        effective_cap(c.max_deficit, c.q),
        effective_cap(c.max_deficit, q_eff),
    )


def simulate_catchup(
    z: int,
    r: int,
    q,
    max_deficit: int = DEFAULT_MAX_DEFICIT,
    trials: int = 100_000,
    seed: int = 0,
    workers: int = 1,
) -> McEstimate:
    """Estimate the chance a secret branch ``z`` blocks behind ever leads by ``r``."""
    z = int(z)
    r = _integer(r, "r", 0)
    q = hash_share(q)
    max_deficit = _integer(max_deficit, "max_deficit", 1)
    trials = _integer(trials, "trials", 1)
    return _run(
        _kernels.catchup_range,
        trials,
        workers,
        _seed(seed),
        z,
        r,
        q,
        effective_cap(max_deficit, q),
    )


def sample_secret_lengths(n: int, q, trials: int, seed: int = 0) -> np.ndarray:
    """Secret-branch length when the main branch mines its ``n``-th block, per trial.

    Uses the same per-trial streams as :func:`simulate_type1`, so entry ``t``
    is the phase-1 outcome of trial ``t`` there.
    """
    n = _integer(n, "n", 1)
    q = hash_share(q)
    if q == 1.0:
        raise ValueError("phase 1 never completes at q = 1")
    trials = _integer(trials, "trials", 1)
    out = np.empty(trials, dtype=np.int64)
    _kernels.phase1_range(_seed(seed), 0, out, n, q)
    return out


def uniform_stream(seed: int, trial: int, size: int) -> np.ndarray:
    out = np.empty(size, dtype=np.float64)
    _kernels.uniform_range(_seed(seed), _integer(trial, "trial", 0), out)
    return out
