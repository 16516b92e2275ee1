# -*- coding: utf-8 -*-
"""
博弈数据模块测试
"""
import json
import os

import numpy as np
import pytest

from config.settings import GAMES_DIR
from src.exceptions import (
    GameError, ShapeMismatch, NonPositiveWeight, NonFiniteEntry, IndexOutOfRange,
    MalformedJson, SchemaViolation
)
from src.game_model import (
    WeightedStrategySpace, FiniteGame, PassiveGame, new_game, payoff, add_passive,
    parse_game_json, serialize_game, matching_pennies, battle_of_sexes,
    common_interest_game, random_game, random_weights, random_passives,
    planted_potential_game, planted_zero_sum_game
)


def _read_fixture(name):
    with open(os.path.join(GAMES_DIR, name), 'rb') as f:
        return f.read()


# ============ 策略空间 ============
def test_counting_space_defaults():
    space = WeightedStrategySpace.counting([2, 3])
    assert space.n == 2
    assert space.shape == (2, 3)
    assert space.is_counting and space.is_uniform
    assert space.total_weight(1) == 3.0
    assert space.axis_weights(1).shape == (1, 3)


def test_uniform_but_not_counting():
    space = WeightedStrategySpace((2, 2), ([0.5, 0.5], [2.0, 2.0]))
    assert space.is_uniform
    assert not space.is_counting


@pytest.mark.parametrize("sizes", [(), (0,), (2, -1), (1.5,)])
def test_space_rejects_bad_sizes(sizes):
    with pytest.raises(ShapeMismatch):
        WeightedStrategySpace(sizes)


@pytest.mark.parametrize("weights", [
    ([1.0, 0.0], [1.0, 1.0]),
    ([1.0, -2.0], [1.0, 1.0]),
    ([1.0, np.inf], [1.0, 1.0]),
])
def test_space_rejects_bad_weights(weights):
    with pytest.raises(NonPositiveWeight):
        WeightedStrategySpace((2, 2), weights)


def test_space_rejects_wrong_weight_length():
    with pytest.raises(ShapeMismatch):
        WeightedStrategySpace((2, 2), ([1.0, 1.0, 1.0], [1.0, 1.0]))


# ============ 有限博弈 ============
def test_new_game_and_payoff():
    game = battle_of_sexes()
    assert game.n == 2
    assert game.sizes == (2, 2)
    assert payoff(game, 0, (0, 0)) == 3.0
    assert payoff(game, 1, (1, 1)) == 3.0
    assert payoff(game, 1, (0, 1)) == 0.0
    assert game.scale() == 3.0


def test_scale_is_at_least_one():
    game = new_game([2], [[0.1, -0.2]])
    assert game.max_abs() == pytest.approx(0.2)
    assert game.scale() == 1.0


def test_single_player_game_allowed():
    game = new_game([3], [[1.0, 2.0, 3.0]])
    assert game.n == 1
    assert payoff(game, 0, (2,)) == 3.0


def test_game_is_immutable():
    game = matching_pennies()
    with pytest.raises(ValueError):
        game.payoffs[0][0, 0] = 5.0
    with pytest.raises(Exception):
        game.payoffs = ()


@pytest.mark.parametrize("player, profile", [
    (2, (0, 0)),
    (-1, (0, 0)),
    (0, (2, 0)),
    (0, (0,)),
])
def test_payoff_index_errors(player, profile):
    with pytest.raises(IndexOutOfRange):
        payoff(matching_pennies(), player, profile)


def test_index_error_is_also_builtin_index_error():
    with pytest.raises(IndexError):
        payoff(matching_pennies(), 0, (5, 0))


def test_new_game_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        new_game([2, 2], [[[1, 2], [3, 4]], [[1, 2, 3], [4, 5, 6]]])
    with pytest.raises(ShapeMismatch):
        new_game([2, 2], [[[1, 2], [3, 4]]])


def test_new_game_rejects_nan():
    with pytest.raises(NonFiniteEntry):
        new_game([2], [[1.0, np.nan]])


def test_labels_are_kept_and_checked():
    game = new_game([2], [[1.0, 2.0]], labels=[['a', 'b']])
    assert game.labels == (('a', 'b'),)
    with pytest.raises(ShapeMismatch):
        new_game([2], [[1.0, 2.0]], labels=[['a']])


def test_errors_share_base_class():
    assert issubclass(SchemaViolation, GameError)
    assert issubclass(GameError, ValueError)


# ============ 被动博弈 ============
def test_passive_game_expand():
    g = PassiveGame(0, [[1.0, 2.0, 3.0]])
    full = g.expand((2, 3))
    np.testing.assert_array_equal(full, [[1, 2, 3], [1, 2, 3]])
    with pytest.raises(ShapeMismatch):
        g.expand((2, 4))


def test_passive_game_requires_collapsed_axis():
    with pytest.raises(ShapeMismatch):
        PassiveGame(1, np.zeros((2, 3)))


def test_add_passive_zero_is_identity():
    game = battle_of_sexes()
    zeros = [PassiveGame.zeros(game.space, i) for i in range(game.n)]
    assert add_passive(game, zeros) == game


def test_add_passive_keeps_unilateral_differences():
    rng = np.random.default_rng(0)
    game = random_game(rng, (3, 2, 4))
    shifted = add_passive(game, random_passives(rng, game.space))
    for i in range(game.n):
        d0 = np.diff(game.payoffs[i], axis=i)
        d1 = np.diff(shifted.payoffs[i], axis=i)
        np.testing.assert_allclose(d0, d1, atol=1e-12)


def test_add_passive_checks_player_order():
    game = matching_pennies()
    passives = [PassiveGame.zeros(game.space, 1), PassiveGame.zeros(game.space, 0)]
    with pytest.raises(ShapeMismatch):
        add_passive(game, passives)


# ============ JSON ============
def test_parse_fixture():
    game = parse_game_json(_read_fixture('battle_of_sexes.json'))
    assert game == new_game([2, 2], [[[3, 0], [0, 2]], [[2, 0], [0, 3]]],
                            labels=[['歌剧', '足球'], ['歌剧', '足球']])


def test_parse_accepts_str():
    text = '{"players": 1, "sizes": [2], "payoffs": [[1, 2]]}'
    assert parse_game_json(text).payoffs[0].tolist() == [1.0, 2.0]


def test_weights_omitted_means_counting():
    game = parse_game_json(_read_fixture('matching_pennies.json'))
    assert game.space.is_counting
    assert 'weights' not in json.loads(serialize_game(game))


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_serialize_round_trip(seed):
    rng = np.random.default_rng(seed)
    sizes = (2, 3, 2)
    game = random_game(rng, sizes, random_weights(rng, sizes))
    data = serialize_game(game)
    back = parse_game_json(data)
    assert back == game
    assert serialize_game(back) == data


def test_serialize_is_utf8_with_trailing_newline():
    game = parse_game_json(_read_fixture('matching_pennies.json'))
    data = serialize_game(game)
    assert data.endswith(b'\n')
    assert '正面'.encode('utf-8') in data


@pytest.mark.parametrize("data", [
    b'\xff\xfe',
    b'{"players": 1,',
])
def test_parse_malformed(data):
    with pytest.raises(MalformedJson):
        parse_game_json(data)


@pytest.mark.parametrize("text", [
    '[]',
    '{"players": 1, "sizes": [2]}',
    '{"players": 1, "sizes": [2], "payoffs": [[1, 2]], "extra": 0}',
    '{"players": 2, "sizes": [2, 2], "payoffs": [[[1, 2], [3]], [[1, 2], [3, 4]]]}',
    '{"players": 1, "sizes": [2], "payoffs": [["a", "b"]]}',
    '{"players": 1, "sizes": [2], "payoffs": [[true, false]]}',
    '{"players": 1, "sizes": [2], "payoffs": [[1, NaN]]}',
    '{"players": 1, "sizes": [2], "payoffs": [[1, 2]], "weights": [[1, -1]]}',
    '{"players": 1, "sizes": [2], "payoffs": [[1, 2]], "weights": [[1, 1], [1, 1]]}',
    '{"players": 1, "sizes": [3], "payoffs": [[1, 2]]}',
    '{"players": 0, "sizes": [], "payoffs": []}',
])
def test_parse_schema_violations(text):
    with pytest.raises(SchemaViolation):
        parse_game_json(text)


# ============ 生成器 ============
def test_common_interest_game():
    v = [[1.0, 0.0], [0.0, 0.0]]
    game = common_interest_game(v)
    assert game.n == 2
    for p in game.payoffs:
        np.testing.assert_array_equal(p, v)


def test_planted_potential_shape():
    rng = np.random.default_rng(5)
    game, v = planted_potential_game(rng, (2, 3, 2))
    assert game.sizes == (2, 3, 2)
    assert v.shape == (2, 3, 2)
    # u^(i) - v 与 s_i 无关
    for i, u in enumerate(game.payoffs):
        diff = u - v
        np.testing.assert_allclose(diff, np.take(diff, [0], axis=i).repeat(game.sizes[i], axis=i),
                                   atol=1e-12)


def test_planted_zero_sum_parts_sum_to_zero():
    rng = np.random.default_rng(6)
    game, vs = planted_zero_sum_game(rng, (3, 2))
    np.testing.assert_allclose(sum(vs), 0.0, atol=1e-12)
    assert isinstance(game, FiniteGame)
