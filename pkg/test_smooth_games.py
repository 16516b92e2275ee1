# -*- coding: utf-8 -*-
"""
连续博弈测试 - 有限差分、导数检验、网格采样与竞赛博弈
"""
import math

import numpy as np
import pytest

from src.averaging_ops import t_product
from src.classifiers import potential_test, zero_sum_equiv_test, classify
from src.exceptions import (
    DuplicateAxis, IndexOutOfRange, InvalidStep, StencilOutOfBox, BoxNotPositive,
    InvalidParameter, WrongPlayerCount, UnknownBuiltin
)
from src.smooth_games import (
    SmoothGame, GridSpec, mixed_partial, derivative_potential_test, derivative_zero_sum_test,
    default_points, grid_nodes, sample_game, contest_game, cournot_game, bilinear_game,
    separable_potential_game, build_builtin
)

UNIT_BOX = ((0.0, 1.0), (0.0, 1.0))


def _product(s):
    return s[0] * s[1]


def _exp_sin(s):
    return math.exp(s[0]) * math.sin(s[1])


# ============ 有限差分 ============
def test_mixed_partial_bilinear():
    assert mixed_partial(_product, [0.5, 0.5], [0, 1]) == pytest.approx(1.0, abs=1e-6)


def test_mixed_partial_first_order():
    value = mixed_partial(lambda s: s[0] ** 2, [0.3], [0])
    assert value == pytest.approx(0.6, abs=1e-8)


def test_mixed_partial_third_order():
    value = mixed_partial(lambda s: s[0] * s[1] * s[2], [0.2, 0.4, 0.6], [0, 1, 2], h=1e-2)
    assert value == pytest.approx(1.0, abs=1e-8)


def test_mixed_partial_second_order_convergence():
    """h 从 1e-2 减半到 1.25e-3；再小时舍入误差占主导，比值不再接近 4"""
    point = [0.0, 1.0]
    exact = math.exp(0.0) * math.cos(1.0)
    steps = [1e-2 / 2 ** k for k in range(4)]
    errors = [abs(mixed_partial(_exp_sin, point, [0, 1], h=h) - exact) for h in steps]
    for coarse, fine in zip(errors, errors[1:]):
        assert 3.5 <= coarse / fine <= 4.5


@pytest.mark.parametrize("axes, error", [
    ([0, 0], DuplicateAxis),
    ([0, 2], IndexOutOfRange),
])
def test_mixed_partial_axis_errors(axes, error):
    with pytest.raises(error):
        mixed_partial(_product, [0.5, 0.5], axes)


@pytest.mark.parametrize("h", [0.0, -1e-4, float('nan')])
def test_mixed_partial_invalid_step(h):
    with pytest.raises(InvalidStep):
        mixed_partial(_product, [0.5, 0.5], [0, 1], h=h)


def test_stencil_out_of_box():
    with pytest.raises(StencilOutOfBox):
        mixed_partial(_product, [0.0, 0.5], [0, 1], box=UNIT_BOX)


def test_default_points_stay_inside():
    game = contest_game()
    points = default_points(game)
    assert len(points) == 25
    for p in points:
        for x, (lo, hi) in zip(p, game.box):
            assert lo < x < hi


# ============ 导数检验 ============
def test_bilinear_zero_sum_passes():
    verdict = derivative_zero_sum_test(bilinear_game(-1.0), tol=1e-6)
    assert verdict.passed
    assert verdict.residual <= 1e-6
    assert verdict.note == 'numerical evidence'


def test_common_interest_control_fails_zero_sum():
    verdict = derivative_zero_sum_test(bilinear_game(1.0), tol=1e-6)
    assert not verdict.passed
    assert verdict.residual == pytest.approx(2.0, abs=1e-4)
    assert derivative_potential_test(bilinear_game(1.0), tol=1e-6).passed


def test_separable_potential_derivative():
    game = separable_potential_game()
    verdict = derivative_potential_test(game, tol=1e-6)
    assert verdict.passed
    assert verdict.operations == 25
    assert not derivative_zero_sum_test(game, tol=1e-6).passed


def test_cournot_is_potential_not_zero_sum():
    game = cournot_game()
    assert derivative_potential_test(game, tol=1e-6).passed
    assert not derivative_zero_sum_test(game, tol=1e-6).passed


def test_potential_derivative_needs_two_players():
    game = SmoothGame(((0.0, 1.0),), (lambda s: s[0],))
    with pytest.raises(WrongPlayerCount):
        derivative_potential_test(game)


def test_explicit_points_outside_stencil():
    with pytest.raises(StencilOutOfBox):
        derivative_zero_sum_test(bilinear_game(-1.0), points=[[1.0, 0.5]])


def test_witness_point():
    verdict = derivative_zero_sum_test(bilinear_game(1.0), points=[[0.5, 0.5]], tol=1e-6)
    assert verdict.witness == {'point': [0.5, 0.5]}


# ============ 竞赛博弈 ============
def test_contest_payoff_value():
    game = contest_game(alpha=1.0, v=1.0, cost_coeffs=(1.0, 1.0))
    assert game.payoffs[0](np.array([1.0, 1.0])) == pytest.approx(-0.5)


@pytest.mark.parametrize("point", [(0.2, 3.0), (1.0, 1.0), (7.5, 0.4)])
def test_contest_payoffs_sum(point):
    game = contest_game(alpha=0.5, v=2.0, cost_coeffs=(0.5, 1.5))
    x = np.array(point)
    total = game.payoffs[0](x) + game.payoffs[1](x)
    assert total == pytest.approx(2.0 - 0.5 * point[0] - 1.5 * point[1], abs=1e-12)


@pytest.mark.parametrize("alpha", [0.5, 1.0])
def test_contest_is_zero_sum_equivalent(alpha):
    verdict = derivative_zero_sum_test(contest_game(alpha=alpha), h=1e-4, tol=1e-5)
    assert verdict.passed
    assert verdict.residual <= 1e-5
    assert verdict.operations == 25


def test_contest_is_not_potential():
    assert not derivative_potential_test(contest_game(alpha=0.5), tol=1e-6).passed


@pytest.mark.parametrize("kwargs, error", [
    ({'box': ((0.0, 10.0), (0.1, 10.0))}, BoxNotPositive),
    ({'box': ((-1.0, 10.0), (0.1, 10.0))}, BoxNotPositive),
    ({'alpha': 1.5}, InvalidParameter),
    ({'v': 0.0}, InvalidParameter),
    ({'v': float('inf')}, InvalidParameter),
])
def test_contest_parameter_errors(kwargs, error):
    with pytest.raises(error):
        contest_game(**kwargs)


# ============ 网格采样 ============
def test_midpoint_nodes():
    nodes, weights = grid_nodes(separable_potential_game(), GridSpec.uniform(2, 4))
    np.testing.assert_allclose(nodes[0], [0.125, 0.375, 0.625, 0.875])
    np.testing.assert_allclose(weights[1], [0.25] * 4)


def test_gauss_legendre_nodes():
    game = contest_game()
    nodes, weights = grid_nodes(game, GridSpec.uniform(2, 6, 'gauss-legendre'))
    for x, w, (lo, hi) in zip(nodes, weights, game.box):
        assert np.all((x > lo) & (x < hi))
        assert w.sum() == pytest.approx(hi - lo)


def test_sampled_separable_game():
    game = separable_potential_game()
    sampled = sample_game(game, GridSpec.uniform(2, 16))
    assert sampled.sizes == (16, 16)
    assert sampled.labels[0][0] == '0.03125'

    lhs = t_product(sampled.payoffs[0], sampled.space, [0, 1])
    rhs = t_product(sampled.payoffs[1], sampled.space, [0, 1])
    np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-12 * sampled.scale())

    verdict = potential_test(sampled, 1e-9)
    assert verdict.passed and verdict.residual <= 1e-9


def test_sampled_gauss_legendre_game():
    sampled = sample_game(separable_potential_game(), GridSpec.uniform(2, 8, 'gauss-legendre'))
    assert not sampled.space.is_uniform
    assert potential_test(sampled, 1e-9).passed


def test_sampled_constant_game():
    game = SmoothGame(UNIT_BOX, (lambda s: 3.0, lambda s: -1.5))
    report = classify(sample_game(game, GridSpec.uniform(2, 4)), 1e-9)
    assert report.potential.residual == 0.0
    assert report.zero_sum_equivalent.residual == 0.0


def test_sampled_common_interest():
    sampled = sample_game(bilinear_game(1.0), GridSpec.uniform(2, 8))
    assert potential_test(sampled, 1e-9).passed
    assert not zero_sum_equiv_test(sampled, 1e-9).passed


def test_sampled_contest_is_zero_sum_equivalent():
    sampled = sample_game(contest_game(), GridSpec.uniform(2, 12))
    assert zero_sum_equiv_test(sampled, 1e-9).passed


def test_parallel_sampling_matches_sequential():
    game = contest_game(alpha=0.5)
    spec = GridSpec((7, 9))
    assert sample_game(game, spec, workers=4) == sample_game(game, spec)


@pytest.mark.parametrize("points, scheme", [((0, 3), 'midpoint'), ((3, 3), 'simpson')])
def test_grid_spec_errors(points, scheme):
    with pytest.raises(InvalidParameter):
        GridSpec(points, scheme)


def test_grid_dimension_mismatch():
    with pytest.raises(InvalidParameter):
        sample_game(separable_potential_game(), GridSpec((4,)))


# ============ 内置博弈 ============
def test_build_builtin_defaults():
    game = build_builtin('contest')
    assert game.name == 'contest'
    assert game.box == ((0.1, 10.0), (0.1, 10.0))


def test_build_builtin_overrides():
    game = build_builtin('cournot', {'a': 4.0}, ((0.0, 2.0), (0.0, 2.0)))
    assert game.payoffs[0](np.array([1.0, 1.0])) == pytest.approx(2.0)
    assert game.box == ((0.0, 2.0), (0.0, 2.0))


def test_build_builtin_errors():
    with pytest.raises(UnknownBuiltin):
        build_builtin('prisoners-dilemma')
    with pytest.raises(InvalidParameter):
        build_builtin('contest', {'beta': 1.0})
    with pytest.raises(BoxNotPositive):
        build_builtin('contest', box=((0.0, 1.0), (0.0, 1.0)))
