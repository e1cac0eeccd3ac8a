"""Exact rational evaluation of the race sums.

Independent of the floating-point closed forms in :mod:`blockrace.analytic`:
these evaluate the defining series term by term with :class:`fractions.Fraction`
(the tail beyond the success boundary is summed through the normalisation of
the negative binomial, which is exact).  Intended for small ``n`` (<= 12) as a
regression anchor; cost grows quickly with ``n``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb


def _as_fraction(q) -> Fraction:
    q = Fraction(q)
    if not 0 <= q <= 1:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    return q


def pmf(n: int, q, m: int) -> Fraction:
    """C(n+m-1, m) (1-q)^n q^m as an exact fraction."""
    q = _as_fraction(q)
    return comb(n + m - 1, m) * (1 - q) ** n * q**m


def catchup(z: int, r: int, q) -> Fraction:
    q = _as_fraction(q)
    if z <= -r or q >= Fraction(1, 2):
        return Fraction(1)
    return (q / (1 - q)) ** (z + r)


def race_success(n: int, r: int, q, premine: int = 0) -> Fraction:
    """sum_m P_{n,q}(m) * a^{(r)}_{n-m-premine}(q), exactly.

    Starting points with ``m >= n + r - premine`` are already winning, so the
    infinite remainder of the series equals the leftover probability mass.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    q = _as_fraction(q)
    if q >= Fraction(1, 2):
        return Fraction(1)
    head = range(max(n + r - premine, 0))
    weights = [pmf(n, q, m) for m in head]
    behind = sum(w * catchup(n - m - premine, r, q) for m, w in zip(head, weights))
    return behind + (1 - sum(weights, Fraction(0)))


def revocation_prob(n: int, r: int, q) -> Fraction:
    return race_success(n, r, q, premine=0)


def double_spend_prob(n: int, q) -> Fraction:
    return race_success(n, 1, q, premine=1)
