"""Closed-form success probabilities for block-hiding strategies.

All quantities are expressed in relative hashing shares: the block hider
controls a fraction ``q`` of the network and the standard miners hold
``p = 1 - q``.  Every function is pure and returns a probability in [0, 1].

Piecewise formulas assign the point ``q = 1/2`` to the "always succeeds"
branch.  Both branches agree there, so this is only a bookkeeping choice,
but it also means ``q = 1`` never reaches an expression containing
``1 / (1 - q)``.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

__all__ = [
    "hash_share",
    "tie_split",
    "RaceState",
    "neg_binomial_pmf",
    "catchup_prob",
    "revocation_prob",
    "type1_success",
    "double_spend_prob",
    "tie_prob",
    "q_effective",
    "type0_success",
    "race_success",
]

HALF = 0.5

# Above this size binomial coefficients are evaluated through lgamma.
_EXACT_BINOM_LIMIT = 60


def _fraction(value, name: str) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise TypeError(f"{name} must be a real number, got {value!r}") from None
    if not math.isfinite(value) or not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must be a finite fraction in [0, 1], got {value!r}")
    return value


def hash_share(q) -> float:
    """Validate a relative hashing power and return it as a float."""
    return _fraction(q, "q")


def tie_split(gamma) -> float:
    """Validate the fraction of standard miners that follow the hider after a tie."""
    return _fraction(gamma, "gamma")


def _integer(value, name: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class RaceState:
    """Snapshot of a fork race on top of the last common block.

    ``n`` blocks on the main branch, ``m`` on the secret branch and a
    required final lead ``r`` for the secret branch.
    """

    n: int
    m: int
    r: int = 1

    def __post_init__(self):
        object.__setattr__(self, "n", _integer(self.n, "n", 1))
        object.__setattr__(self, "m", _integer(self.m, "m", 0))
        object.__setattr__(self, "r", _integer(self.r, "r", 0))

    @property
    def deficit(self) -> int:
        return self.n - self.m

    def catchup(self, q) -> float:
        return catchup_prob(self.deficit, self.r, q)


def _log_binom(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _binom_term(n: int, m: int, log_a: float, a_pow: int, log_b: float, b_pow: int) -> float:
    """C(n+m-1, m) * a**a_pow * b**b_pow given log a and log b.

    Exponents may be negative.  Zero bases must be handled by the caller.
    """
    top = n + m - 1
    if n + m <= _EXACT_BINOM_LIMIT:
        # math.comb is exact; the powers carry the only rounding.
        return math.comb(top, m) * math.exp(a_pow * log_a + b_pow * log_b)
    return math.exp(_log_binom(top, m) + a_pow * log_a + b_pow * log_b)


def neg_binomial_pmf(n: int, q, m: int) -> float:
    """Probability that the hider mines exactly ``m`` blocks before the
    main branch mines ``n``.

    This is ``C(n+m-1, m) (1-q)^n q^m``.  At ``q = 1`` the main branch never
    finishes, so every finite ``m`` has probability 0.
    """
    n = _integer(n, "n", 1)
    m = _integer(m, "m", 0)
    q = hash_share(q)
    if q == 0.0:
        return 1.0 if m == 0 else 0.0
    if q == 1.0:
        return 0.0
    return _binom_term(n, m, math.log1p(-q), n, math.log(q), m)


def catchup_prob(z: int, r: int, q) -> float:
    """Probability that the secret branch, ``z`` blocks behind, ever leads by ``r``.

    Deficits at or beyond the success boundary (``z <= -r``) count as
    immediate success.
    """
    z = int(z)
    r = _integer(r, "r", 0)
    q = hash_share(q)
    if z <= -r or q >= HALF:
        return 1.0
    return (q / (1.0 - q)) ** (z + r)


def _tail_sum(n: int, r: int, q: float, premine: int) -> float:
    """1 - sum over losing starts of P_{n,q}(m) * (1 - a^{(r)}_{n-m-premine}).

    Rearranged to the finite closed form
    ``1 - sum_m C(n+m-1, m) [p^n q^m - p^(m+premine-r) q^(n-premine+r)]``
    with ``m`` running while the start is still behind the success boundary.
    Requires ``0 < q < 1/2``.
    """
    log_p, log_q = math.log1p(-q), math.log(q)
    total = 0.0
    for m in range(n + r - premine):
        total += _binom_term(n, m, log_p, n, log_q, m)
        total -= _binom_term(n, m, log_p, m + premine - r, log_q, n - premine + r)
    return 1.0 - total


def revocation_prob(n: int, r: int, q) -> float:
    """Probability a block with ``n`` confirmations is overtaken by ``r`` blocks.

    Sums the negative-binomial head start against the catch-up walk, using
    the finite closed form for ``q < 1/2`` and 1 otherwise.
    """
    n = _integer(n, "n", 1)
    r = _integer(r, "r", 0)
    q = hash_share(q)
    if q >= HALF:
        return 1.0
    if q == 0.0:
        return 0.0
    return _clip(_tail_sum(n, r, q, premine=0))


def double_spend_prob(n: int, q) -> float:
    """Revocation probability after ``n`` confirmations when the attacker
    holds one pre-mined block at the start of the race (``r = 1``)."""
    n = _integer(n, "n", 1)
    q = hash_share(q)
    if q >= HALF:
        return 1.0
    if q == 0.0:
        return 0.0
    # premine=1 sums m = 0..n-1; an m = n term would vanish identically.
    return _clip(_tail_sum(n, 1, q, premine=1))


def race_success(n: int, r: int, q, premine: int = 0) -> float:
    """General race outcome used by the simulator: ``premine`` secret blocks
    are already mined when the main branch starts its ``n`` confirmations."""
    n = _integer(n, "n", 1)
    r = _integer(r, "r", 0)
    premine = _integer(premine, "premine", 0)
    q = hash_share(q)
    if q >= HALF:
        return 1.0
    if q == 0.0:
        return 1.0 if n - premine <= -r else 0.0
    if premine >= n + r:
        return 1.0
    return _clip(_tail_sum(n, r, q, premine))


def type1_success(q) -> float:
    """Success probability of publishing once the secret branch is one block ahead."""
    q = hash_share(q)
    if q >= HALF:
        return 1.0
    return q * q * (3.0 - 2.0 * q) / (1.0 - q)


def tie_prob(q) -> float:
    """Probability that the secret branch ever draws level with the next main block."""
    q = hash_share(q)
    if q >= HALF:
        return 1.0
    return 2.0 * q


def q_effective(q, gamma) -> float:
    """Hashing share of the hider's coalition once a tie has been published."""
    q = hash_share(q)
    gamma = tie_split(gamma)
    return min(q + gamma * (1.0 - q), 1.0)


def type0_success(q, gamma) -> float:
    """Success probability of publishing at a tie.

    The hider first has to reach a tie, then wins the follow-up race with
    the coalition share ``q + gamma (1 - q)``.
    """
    q = hash_share(q)
    gamma = tie_split(gamma)
    return tie_prob(q) * catchup_prob(0, 1, q_effective(q, gamma))


def _clip(x: float) -> float:
    return min(max(x, 0.0), 1.0)
