"""Success probabilities of block-hiding mining strategies in proof-of-work fork races."""

from .analytic import (
    RaceState,
    catchup_prob,
    double_spend_prob,
    hash_share,
    neg_binomial_pmf,
    q_effective,
    race_success,
    revocation_prob,
    tie_prob,
    tie_split,
    type0_success,
    type1_success,
)
from .phase import (
    PhasePoint,
    Strategy,
    StrategyOrdering,
    best_strategy,
    classify,
    gamma_c,
    influence,
    q0,
    qb,
    qc,
    qminus,
    qplus,
    qpm,
    selfish_curve,
)
from .simulate import (
    McEstimate,
    RaceConfig,
    simulate_catchup,
    simulate_type0,
    simulate_type1,
)

__version__ = "0.1.0"
