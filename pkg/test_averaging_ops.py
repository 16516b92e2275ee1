# -*- coding: utf-8 -*-
"""
平均算子测试 - 手算样例与算子恒等式
"""
import numpy as np
import pytest

from config.settings import IDENTITY_RTOL
from src.averaging_ops import t_op, t_hat_op, t_product, weighted_mean, telescoping_passives
from src.exceptions import ShapeMismatch, IndexOutOfRange, DuplicateAxis
from src.game_model import WeightedStrategySpace, PassiveGame, random_weights

H = np.array([[1.0, 2.0], [3.0, 4.0]])
SPACE_2X2 = WeightedStrategySpace.counting([2, 2])


def random_tensors(count=100, seed=0):
    """n <= 4, 每轴 <= 5 的随机张量，一半带随机权重"""
    rng = np.random.default_rng(seed)
    cases = []
    for k in range(count):
        n = int(rng.integers(1, 5))
        sizes = tuple(int(x) for x in rng.integers(1, 6, size=n))
        weights = random_weights(rng, sizes) if k % 2 else None
        space = WeightedStrategySpace(sizes, weights)
        cases.append((rng.uniform(-3.0, 3.0, size=sizes), space))
    return cases


CASES = random_tensors()


def _atol(h):
    return IDENTITY_RTOL * max(1.0, float(np.abs(h).max()))


# ============ 手算样例 ============
def test_t_op_example():
    np.testing.assert_array_equal(t_op(H, SPACE_2X2, 0), [[-1.0, -1.0], [1.0, 1.0]])


def test_t_hat_op_example():
    np.testing.assert_array_equal(t_hat_op(H, SPACE_2X2, 0), [[2.0, 3.0], [2.0, 3.0]])


def test_t_product_example():
    np.testing.assert_array_equal(t_product(H, SPACE_2X2, [0, 1]), np.zeros((2, 2)))


def test_empty_product_is_identity():
    out = t_product(H, SPACE_2X2, [])
    np.testing.assert_array_equal(out, H)
    assert out is not H


def test_matching_pennies_columns_already_centered():
    a = np.array([[1.0, -1.0], [-1.0, 1.0]])
    np.testing.assert_array_equal(t_product(a, SPACE_2X2, [0]), a)


def test_constant_is_annihilated():
    space = WeightedStrategySpace.counting([3, 2])
    for i in range(2):
        np.testing.assert_array_equal(t_op(np.full((3, 2), 4.0), space, i), np.zeros((3, 2)))


def test_weighted_mean():
    space = WeightedStrategySpace((2, 2), ([1.0, 3.0], [1.0, 1.0]))
    # 沿第 0 轴: (1*1 + 3*3)/4, (1*2 + 3*4)/4
    np.testing.assert_allclose(weighted_mean(H, space, 0), [[2.5, 3.5]])
    np.testing.assert_allclose(t_op(H, space, 0), [[-1.5, -1.5], [0.5, 0.5]])


def test_weighted_output_has_zero_mean():
    rng = np.random.default_rng(3)
    space = WeightedStrategySpace((4, 3), random_weights(rng, (4, 3)))
    h = rng.normal(size=(4, 3))
    for i in range(2):
        np.testing.assert_allclose(weighted_mean(t_op(h, space, i), space, i), 0.0, atol=1e-12)


# ============ 错误 ============
def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        t_op(np.zeros((2, 3)), SPACE_2X2, 0)


@pytest.mark.parametrize("op", [t_op, t_hat_op, weighted_mean])
def test_index_out_of_range(op):
    with pytest.raises(IndexOutOfRange):
        op(H, SPACE_2X2, 2)


def test_product_errors():
    with pytest.raises(DuplicateAxis):
        t_product(H, SPACE_2X2, [0, 0])
    with pytest.raises(IndexOutOfRange):
        t_product(H, SPACE_2X2, [0, 3])


# ============ 算子恒等式 ============
def test_idempotence():
    for h, space in CASES:
        for i in range(space.n):
            once = t_op(h, space, i)
            np.testing.assert_allclose(t_op(once, space, i), once, rtol=0, atol=_atol(h))


def test_commutation():
    for h, space in CASES:
        for i in range(space.n):
            for j in range(i + 1, space.n):
                a = t_op(t_op(h, space, i), space, j)
                b = t_op(t_op(h, space, j), space, i)
                np.testing.assert_allclose(a, b, rtol=0, atol=_atol(h))


def test_complement():
    for h, space in CASES:
        for i in range(space.n):
            total = t_op(h, space, i) + t_hat_op(h, space, i)
            np.testing.assert_allclose(total, h, rtol=0, atol=_atol(h))


def test_annihilation_of_axis_constant_tensors():
    for h, space in CASES[:30]:
        for i in range(space.n):
            g = PassiveGame(i, np.take(h, [0], axis=i)).expand(space.sizes)
            np.testing.assert_allclose(t_op(g, space, i), 0.0, rtol=0, atol=_atol(h))
            np.testing.assert_allclose(t_hat_op(g, space, i), g, rtol=0, atol=_atol(h))


def test_t_hat_is_constant_along_axis():
    for h, space in CASES[:30]:
        for i in range(space.n):
            out = t_hat_op(h, space, i)
            spread = out.max(axis=i) - out.min(axis=i)
            assert float(spread.max()) <= _atol(h)


def test_two_axis_factorization():
    for h, space in CASES:
        for i in range(space.n):
            for j in range(space.n):
                if i == j:
                    continue
                first = t_hat_op(h, space, i)
                expected = h - (first + t_hat_op(h - first, space, j))
                np.testing.assert_allclose(t_product(h, space, [i, j]), expected,
                                           rtol=0, atol=_atol(h))


def test_n_fold_factorization():
    for h, space in CASES:
        terms = []
        for j in range(space.n):
            g = t_hat_op(h, space, j)
            for l in range(j):
                g = g - t_hat_op(g, space, l)
            terms.append(g)
        expected = h - sum(terms)
        np.testing.assert_allclose(t_product(h, space, range(space.n)), expected,
                                   rtol=0, atol=_atol(h))


def test_telescoping_passives_match_factorization():
    for h, space in CASES:
        tables = telescoping_passives(h, space)
        full = [PassiveGame(j, t).expand(space.sizes) for j, t in enumerate(tables)]
        np.testing.assert_allclose(h - sum(full), t_product(h, space, range(space.n)),
                                   rtol=0, atol=_atol(h))
