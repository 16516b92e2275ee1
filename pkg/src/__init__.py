# -*- coding: utf-8 -*-
"""
项目模块初始化

导入:
    from src import game_model, averaging_ops, classifiers, extraction, smooth_games
"""

from .game_model import (
    WeightedStrategySpace, FiniteGame, PassiveGame,
    new_game, payoff, add_passive, parse_game_json, serialize_game
)
from .averaging_ops import t_op, t_hat_op, t_product, weighted_mean, telescoping_passives
from .classifiers import (
    TestVerdict, ClassificationReport,
    potential_test, zero_sum_equiv_test, cycle_test, sandholm_test_2p, classify
)
from .extraction import (
    PotentialDecomposition, ZeroSumRepresentation, UiRepresentation,
    extract_potential, verify_potential, zero_sum_normalize,
    potential_representation, zero_sum_representation, characterization_residual
)
from .smooth_games import (
    SmoothGame, GridSpec,
    mixed_partial, derivative_potential_test, derivative_zero_sum_test,
    contest_game, sample_game, build_builtin
)

__all__ = [
    'WeightedStrategySpace', 'FiniteGame', 'PassiveGame',
    'new_game', 'payoff', 'add_passive', 'parse_game_json', 'serialize_game',
    't_op', 't_hat_op', 't_product', 'weighted_mean', 'telescoping_passives',
    'TestVerdict', 'ClassificationReport',
    'potential_test', 'zero_sum_equiv_test', 'cycle_test', 'sandholm_test_2p', 'classify',
    'PotentialDecomposition', 'ZeroSumRepresentation', 'UiRepresentation',
    'extract_potential', 'verify_potential', 'zero_sum_normalize',
    'potential_representation', 'zero_sum_representation', 'characterization_residual',
    'SmoothGame', 'GridSpec',
    'mixed_partial', 'derivative_potential_test', 'derivative_zero_sum_test',
    'contest_game', 'sample_game', 'build_builtin'
]
