# -*- coding: utf-8 -*-
"""
平均算子模块 - T_i 与 T̂_i = I - T_i 及其乘积

    T_i h(s) = h(s) - (1 / m_i(S_i)) * sum_{s_i} m_i(s_i) h(s)

T_i 消去所有与 s_i 无关的函数；T̂_i h 与 s_i 无关。不同轴上的 T_i 可交换。
"""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from src.exceptions import ShapeMismatch, IndexOutOfRange, DuplicateAxis
from src.game_model import WeightedStrategySpace

logger = logging.getLogger(__name__)


def _check(h: np.ndarray, space: WeightedStrategySpace, i: int = None) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    if h.shape != space.sizes:
        raise ShapeMismatch(f"张量形状 {h.shape} 与策略空间 {space.sizes} 不符")
    if i is not None and not 0 <= i < space.n:
        raise IndexOutOfRange(f"玩家下标 {i} 越界 (n={space.n})")
    return h


def _axis_mean(h: np.ndarray, space: WeightedStrategySpace, i: int) -> np.ndarray:
    """沿第 i 轴加权平均（保留维度）；h 的其他轴可以已被压缩"""
    w = space.axis_weights(i)
    return (h * w).sum(axis=i, keepdims=True) / space.total_weight(i)


def _center(h: np.ndarray, space: WeightedStrategySpace, i: int) -> np.ndarray:
    return h - _axis_mean(h, space, i)


def weighted_mean(h, space: WeightedStrategySpace, i: int) -> np.ndarray:
    """
    沿玩家 i 的轴求加权平均

    Returns:
        第 i 轴长度为 1 的张量
    """
    h = _check(h, space, i)
    return _axis_mean(h, space, i)


def t_op(h, space: WeightedStrategySpace, i: int) -> np.ndarray:
    """T_i h：减去沿第 i 轴的加权平均"""
    h = _check(h, space, i)
    return _center(h, space, i)


def t_hat_op(h, space: WeightedStrategySpace, i: int) -> np.ndarray:
    """T̂_i h = h - T_i h：沿第 i 轴的加权平均，广播回完整形状"""
    h = _check(h, space, i)
    return np.broadcast_to(_axis_mean(h, space, i), space.sizes).copy()


def t_product(h, space: WeightedStrategySpace, axes: Sequence[int]) -> np.ndarray:
    """
    依次作用 T_l (l in axes)

    Args:
        h: 完整形状的张量
        space: 策略空间
        axes: 互不相同的玩家下标；空列表表示恒等算子

    Returns:
        prod_l T_l h
    """
    h = _check(h, space)
    axes = list(axes)
    if len(set(axes)) != len(axes):
        raise DuplicateAxis(f"轴重复: {axes}")
    for a in axes:
        if not 0 <= a < space.n:
            raise IndexOutOfRange(f"玩家下标 {a} 越界 (n={space.n})")
    out = h.copy()
    for a in sorted(axes):
        out = _center(out, space, a)
    return out


def telescoping_passives(h, space: WeightedStrategySpace) -> list:
    """
    n 重分解的各项（压缩形式）

        g^(1) = T̂_1 h
        g^(j) = prod_{l<j} (I - T̂_l) T̂_j h = T_1 ... T_{j-1} T̂_j h

    g^(j) 与 s_j 无关，且 h - sum_j g^(j) = prod_l T_l h。

    Returns:
        第 j 项的第 j 轴长度为 1 的张量列表
    """
    h = _check(h, space)
    tables = []
    for j in range(space.n):
        g = _axis_mean(h, space, j)
        for l in range(j):
            g = _center(g, space, l)
        tables.append(g)
    return tables
