"""Exact voting-power computations for weighted games."""

from .core import (
    HypothesisViolated,
    PowerVector,
    WeightVector,
    check_lt_bounds,
    combine_ratio_bounds,
    deviation,
    distance,
    l1_from_relative,
    normalize,
    ratio_bounds,
    weight_stats,
)
from .counting import (
    WeightedGame,
    banzhaf,
    brute_force_indices,
    dual_game,
    eta_one_big,
    game_from_weights,
    is_winning,
    make_game,
    shapley_shubik,
    swing_counts,
    weight_profile,
)

__version__ = "0.1.0"
