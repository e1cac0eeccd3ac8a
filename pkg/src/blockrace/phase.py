"""Strategy phase space over (gamma, q) in the unit square.

Boundary curves return ``None`` where the formula leaves its domain
(``qb`` for gamma >= 1/3, ``qc`` for gamma >= 1/2, ``qpm`` for gamma > 1/17)
so callers have to branch explicitly instead of receiving a negative or
complex threshold.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field

from .analytic import hash_share, tie_split, type0_success, type1_success

__all__ = [
    "Strategy",
    "PhasePoint",
    "StrategyOrdering",
    "CURVES",
    "q0",
    "gamma_c",
    "qb",
    "qc",
    "qpm",
    "qplus",
    "qminus",
    "selfish_curve",
    "influence",
    "hiding_threshold",
    "strategy_probabilities",
    "classify",
    "best_strategy",
]

EPS_LIBRARY = 1e-9
EPS_GRID = 1e-6


class Strategy(str, enum.Enum):
    STANDARD = "Standard"
    TYPE0 = "Type0"
    TYPE1 = "TypeI"

    def __str__(self):
        return self.value


# Tie-break order: earlier entries are ranked first when success
# probabilities coincide within tolerance.
PRECEDENCE = (Strategy.STANDARD, Strategy.TYPE0, Strategy.TYPE1)

CURVES = ("q0", "qb", "qplus", "qminus", "qc", "selfish")


@dataclass(frozen=True)
class PhasePoint:
    gamma: float
    q: float

    def __post_init__(self):
        object.__setattr__(self, "gamma", tie_split(self.gamma))
        object.__setattr__(self, "q", hash_share(self.q))


@dataclass(frozen=True)
class StrategyOrdering:
    ranking: tuple[Strategy, Strategy, Strategy]
    boundary_flags: frozenset[str] = field(default_factory=frozenset)
    ties: frozenset[frozenset[Strategy]] = field(default_factory=frozenset)

    @property
    def best(self) -> Strategy:
        return self.ranking[0]

    def label(self) -> str:
        return ">".join(s.value for s in self.ranking)


def q0() -> float:
    """Hashing share above which publishing one block ahead beats honest mining."""
    return 1.0 - 1.0 / math.sqrt(2.0)


def gamma_c() -> float:
    """Tie split at which q0, qb and qplus meet."""
    return 1.0 - 2.0 / 3.0 * math.sqrt(2.0)


def qb(gamma) -> float | None:
    """Lower edge of the region where publishing at a tie beats honest mining.

    ``None`` means the threshold is 0: for gamma >= 1/3 tie publishing wins
    for every q.
    """
    gamma = tie_split(gamma)
    if gamma >= 1.0 / 3.0:
        return None
    return (1.0 - 3.0 * gamma) / (3.0 - 3.0 * gamma)


def qc(gamma) -> float | None:
    """Share above which the post-tie coalition holds a majority."""
    gamma = tie_split(gamma)
    if gamma >= 0.5:
        return None
    return (1.0 - 2.0 * gamma) / (2.0 - 2.0 * gamma)


def qpm(gamma) -> tuple[float, float] | None:
    """Roots ``(q_minus, q_plus)`` of 2q^2 - q + 2 gamma / (1 - gamma) = 0.

    Between the roots Type I beats Type 0.  For gamma > 1/17 there are no
    real roots and Type 0 is never worse.
    """
    gamma = tie_split(gamma)
    if gamma > 1.0 / 17.0:
        return None
    radicand = max((1.0 - 17.0 * gamma) / (1.0 - gamma), 0.0)
    root = math.sqrt(radicand)
    return 0.25 * (1.0 - root), 0.25 * (1.0 + root)


def qplus(gamma) -> float | None:
    roots = qpm(gamma)
    return None if roots is None else roots[1]


def qminus(gamma) -> float | None:
    roots = qpm(gamma)
    return None if roots is None else roots[0]


def selfish_curve(gamma) -> float:
    """Lower edge (1 - gamma) / (3 - 2 gamma) of the selfish-mining region.

    The upper edge is the constant 1/3.
    """
    gamma = tie_split(gamma)
    return (1.0 - gamma) / (3.0 - 2.0 * gamma)


def influence(point: PhasePoint) -> float:
    return math.hypot(point.q, point.gamma)


def hiding_threshold(gamma) -> float:
    """Smallest q at which some block-hiding strategy beats honest mining."""
    b = qb(gamma)
    return min(q0(), 0.0 if b is None else b)


_CURVE_FUNCS = {
    "q0": lambda g: q0(),
    "qb": qb,
    "qplus": qplus,
    "qminus": qminus,
    "qc": qc,
    "selfish": selfish_curve,
}


def strategy_probabilities(point: PhasePoint) -> dict[Strategy, float]:
    return {
        Strategy.STANDARD: point.q,
        Strategy.TYPE0: type0_success(point.q, point.gamma),
        Strategy.TYPE1: type1_success(point.q),
    }


def curves_near(point: PhasePoint, eps: float) -> frozenset[str]:
    """Names of the boundary curves passing within ``eps`` (in q) of the point."""
    near = set()
    for name, func in _CURVE_FUNCS.items():
        value = func(point.gamma)
        if value is not None and abs(point.q - value) <= eps:
            near.add(name)
    return frozenset(near)


def classify(point: PhasePoint, eps_region: float = EPS_LIBRARY) -> StrategyOrdering:
    """Rank the three strategies at ``point`` by success probability.

    Probabilities within ``eps_region`` of each other count as tied and are
    ordered by the fixed precedence Standard, Type0, TypeI.  Ties are reported
    in ``ties``; curves passing through the point in ``boundary_flags``.
    """
    if not eps_region > 0:
        raise ValueError("eps_region must be positive")
    probs = strategy_probabilities(point)

    def compare(a: Strategy, b: Strategy) -> int:
        diff = probs[a] - probs[b]
        if abs(diff) <= eps_region:
            return PRECEDENCE.index(a) - PRECEDENCE.index(b)
        return -1 if diff > 0 else 1

    ranking = tuple(sorted(PRECEDENCE, key=functools.cmp_to_key(compare)))
    ties = frozenset(
        frozenset((a, b))
        for i, a in enumerate(PRECEDENCE)
        for b in PRECEDENCE[i + 1 :]
        if abs(probs[a] - probs[b]) <= eps_region
    )
    return StrategyOrdering(ranking, curves_near(point, eps_region), ties)


def best_strategy(point: PhasePoint) -> Strategy:
    return classify(point, 1e-12).best
