# -*- coding: utf-8 -*-
"""
连续博弈模块 - 区间乘积上的光滑博弈

功能:
1. 嵌套中心差分计算混合偏导
2. 导数检验（势博弈: 交叉偏导相等；零和等价: n 阶混合偏导之和为 0）
3. 网格采样为 FiniteGame，以便使用积分检验
4. 竞赛博弈与内置博弈注册表

导数检验只在有限个点上检查，结果是数值证据，不是证明。
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from itertools import combinations, product
from typing import Callable, Optional, Sequence

import numpy as np

from config.settings import (
    DEFAULT_STEP, DERIVATIVE_TOL, DEFAULT_POINTS_PER_AXIS, STENCIL_MARGIN,
    DEFAULT_GRID_POINTS, DEFAULT_SCHEME, GRID_SCHEMES, BUILTIN_DEFAULTS
)
from src.classifiers import TestVerdict, check_tolerance, make_verdict
from src.exceptions import (
    DuplicateAxis, IndexOutOfRange, InvalidStep, StencilOutOfBox, BoxNotPositive,
    InvalidParameter, WrongPlayerCount, UnknownBuiltin
)
from src.game_model import FiniteGame, new_game

logger = logging.getLogger(__name__)

NUMERICAL_NOTE = 'numerical evidence'


@dataclass(frozen=True)
class SmoothGame:
    """
    策略集为区间的博弈

    Attributes:
        box: 每个玩家的区间 (lo_i, hi_i)
        payoffs: n 个收益函数，参数为长度 n 的坐标数组
        name: 可选名称
    """
    box: tuple
    payoffs: tuple
    name: str = ''

    def __post_init__(self):
        box = tuple((float(lo), float(hi)) for lo, hi in self.box)
        if not box:
            raise InvalidParameter("至少需要 1 个玩家")
        for i, (lo, hi) in enumerate(box):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise InvalidParameter(f"玩家 {i} 的区间非法: ({lo}, {hi})")
        if len(self.payoffs) != len(box):
            raise InvalidParameter(f"收益函数数 {len(self.payoffs)} 与区间数 {len(box)} 不一致")
        object.__setattr__(self, 'box', box)
        object.__setattr__(self, 'payoffs', tuple(self.payoffs))

    @property
    def n(self) -> int:
        return len(self.box)


@dataclass(frozen=True)
class GridSpec:
    """
    网格规格

    Attributes:
        points_per_axis: 每轴节点数
        scheme: 'midpoint'（默认，权重 (hi-lo)/k）或 'gauss-legendre'
    """
    points_per_axis: tuple
    scheme: str = DEFAULT_SCHEME

    def __post_init__(self):
        counts = tuple(int(k) for k in self.points_per_axis)
        if not counts or any(k < 1 for k in counts):
            raise InvalidParameter(f"每轴节点数必须为正整数: {self.points_per_axis}")
        if self.scheme not in GRID_SCHEMES:
            raise InvalidParameter(f"未知的网格方案: {self.scheme}")
        object.__setattr__(self, 'points_per_axis', counts)

    @classmethod
    def uniform(cls, n: int, k: int = DEFAULT_GRID_POINTS, scheme: str = DEFAULT_SCHEME) -> 'GridSpec':
        return cls((k,) * n, scheme)


# ============ 有限差分 ============
def step_sizes(point: Sequence[float], axes: Sequence[int], h: float = None) -> np.ndarray:
    """每个差分轴上的步长 h * (1 + |x_a|)"""
    h = DEFAULT_STEP if h is None else float(h)
    if not math.isfinite(h) or h <= 0:
        raise InvalidStep(f"步长必须为正: {h}")
    point = np.asarray(point, dtype=float)
    return np.array([h * (1.0 + abs(point[a])) for a in axes])


def mixed_partial(f: Callable, point: Sequence[float], axes: Sequence[int],
                  h: float = None, box: Sequence = None) -> float:
    """
    嵌套中心差分计算 ∂^k f / ∂x_{a_1} ... ∂x_{a_k}

    共 2^k 次函数求值，光滑函数误差 O(h^2)。

    Args:
        f: 以坐标数组为参数的标量函数
        point: 求值点
        axes: 互不相同的求导轴
        h: 基准步长，第 a 轴实际步长为 h * (1 + |x_a|)
        box: 可选区间，模板超出时报错

    Returns:
        混合偏导的近似值
    """
    point = np.asarray(point, dtype=float)
    axes = list(axes)
    if len(set(axes)) != len(axes):
        raise DuplicateAxis(f"求导轴重复: {axes}")
    for a in axes:
        if not 0 <= a < point.size:
            raise IndexOutOfRange(f"求导轴 {a} 越界 (维数 {point.size})")
    steps = step_sizes(point, axes, h)

    if box is not None:
        for a, d in zip(axes, steps):
            lo, hi = box[a]
            if point[a] - d < lo or point[a] + d > hi:
                raise StencilOutOfBox(f"第 {a} 轴模板 [{point[a] - d}, {point[a] + d}] 超出 [{lo}, {hi}]")

    total = 0.0
    for signs in product((1.0, -1.0), repeat=len(axes)):
        x = point.copy()
        for a, sgn, d in zip(axes, signs, steps):
            x[a] += sgn * d
        total += float(np.prod(signs)) * float(f(x))
    return total / float(np.prod(2.0 * steps))


def default_points(game: SmoothGame, h: float = None,
                   per_axis: int = DEFAULT_POINTS_PER_AXIS) -> list:
    """
    导数检验的默认求值点

    每轴按模板边距向内收缩，再取 per_axis 个等分小区间的中点，做张量积。
    """
    axes = []
    for lo, hi in game.box:
        margin = STENCIL_MARGIN * float(step_sizes([max(abs(lo), abs(hi))], [0], h)[0])
        a, b = lo + margin, hi - margin
        if a >= b:
            raise StencilOutOfBox(f"区间 [{lo}, {hi}] 相对步长过窄")
        width = (b - a) / per_axis
        axes.append([a + (k + 0.5) * width for k in range(per_axis)])
    return [np.array(p) for p in product(*axes)]


def _scan_points(game: SmoothGame, points, h) -> tuple:
    points = default_points(game, h) if points is None else [np.asarray(p, dtype=float) for p in points]
    scale = 1.0
    for p in points:
        for f in game.payoffs:
            scale = max(scale, abs(float(f(p))))
    return points, scale


def derivative_potential_test(game: SmoothGame, points: Sequence = None, h: float = None,
                              tol: float = DERIVATIVE_TOL) -> TestVerdict:
    """
    势博弈导数检验: ∂²u^(i)/∂s_i∂s_j = ∂²u^(j)/∂s_i∂s_j

    Returns:
        TestVerdict，note 标注为数值证据
    """
    tol = check_tolerance(tol)
    if game.n < 2:
        raise WrongPlayerCount("势博弈导数检验需要至少两个玩家")
    points, scale = _scan_points(game, points, h)
    best, witness, ops = 0.0, None, 0
    for i, j in combinations(range(game.n), 2):
        for p in points:
            di = mixed_partial(game.payoffs[i], p, [i, j], h, game.box)
            dj = mixed_partial(game.payoffs[j], p, [i, j], h, game.box)
            ops += 1
            value = abs(di - dj)
            if value > best:
                best, witness = value, {'pair': [i, j], 'point': [float(x) for x in p]}
    verdict = make_verdict('derivative_potential', best, scale, tol, witness, ops, NUMERICAL_NOTE)
    logger.debug("势博弈导数检验: residual=%.3e points=%d", verdict.residual, len(points))
    return verdict


def derivative_zero_sum_test(game: SmoothGame, points: Sequence = None, h: float = None,
                             tol: float = DERIVATIVE_TOL) -> TestVerdict:
    """零和等价导数检验: sum_i ∂^n u^(i)/∂s_1...∂s_n = 0"""
    tol = check_tolerance(tol)
    points, scale = _scan_points(game, points, h)
    axes = list(range(game.n))
    best, witness = 0.0, None
    for p in points:
        value = abs(sum(mixed_partial(f, p, axes, h, game.box) for f in game.payoffs))
        if value > best:
            best, witness = value, {'point': [float(x) for x in p]}
    verdict = make_verdict('derivative_zero_sum', best, scale, tol, witness, len(points), NUMERICAL_NOTE)
    logger.debug("零和导数检验: residual=%.3e points=%d", verdict.residual, len(points))
    return verdict


# ============ 网格采样 ============
def grid_nodes(game: SmoothGame, spec: GridSpec) -> tuple:
    """
    每轴节点与求积权重

    Returns:
        (nodes, weights)，均为每个玩家一个一维数组
    """
    if len(spec.points_per_axis) != game.n:
        raise InvalidParameter(f"网格维数 {len(spec.points_per_axis)} 与玩家数 {game.n} 不一致")
    nodes, weights = [], []
    for (lo, hi), k in zip(game.box, spec.points_per_axis):
        if spec.scheme == 'midpoint':
            width = (hi - lo) / k
            x = lo + (np.arange(k) + 0.5) * width
            w = np.full(k, width)
        else:
            q, wq = np.polynomial.legendre.leggauss(k)
            x = (hi - lo) / 2 * q + (hi + lo) / 2
            w = wq * (hi - lo) / 2
        nodes.append(x)
        weights.append(w)
    return nodes, weights


def _evaluate_node(payoffs: tuple, point: tuple) -> list:
    x = np.array(point, dtype=float)
    return [float(f(x)) for f in payoffs]


def sample_game(game: SmoothGame, spec: GridSpec = None, workers: int = None) -> FiniteGame:
    """
    在张量积网格上采样为有限博弈，求积权重作为策略权重 m_i

    Args:
        game: 连续博弈
        spec: 网格规格（默认每轴 DEFAULT_GRID_POINTS 个中点）
        workers: 并行线程数；结果按网格顺序组装，与串行一致

    Returns:
        FiniteGame
    """
    spec = spec or GridSpec.uniform(game.n)
    nodes, weights = grid_nodes(game, spec)
    grid = list(product(*[x.tolist() for x in nodes]))
    task = partial(_evaluate_node, game.payoffs)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            values = list(executor.map(task, grid))
    else:
        values = [task(p) for p in grid]

    sizes = spec.points_per_axis
    table = np.array(values, dtype=float).reshape(sizes + (game.n,))
    payoffs = [table[..., i] for i in range(game.n)]
    labels = [[f"{x:.6g}" for x in axis] for axis in nodes]
    logger.debug("采样网格: %s (%s)", sizes, spec.scheme)
    return new_game(sizes, payoffs, weights, labels)


# ============ 竞赛博弈 ============
def _contest_payoff(s: np.ndarray, player: int, alpha: float, v: float, cost: float) -> float:
    f1, f2 = s[0] ** alpha, s[1] ** alpha
    win = (f1 if player == 0 else f2) / (f1 + f2)
    return win * v - cost * s[player]


def contest_game(alpha: float = 0.5, v: float = 1.0, cost_coeffs: Sequence[float] = (1.0, 1.0),
                 box: Sequence = ((0.1, 10.0), (0.1, 10.0))) -> SmoothGame:
    """
    两人竞赛博弈

        u^(i) = s_i^α / (s_1^α + s_2^α) * v - c_i * s_i

    Args:
        alpha: f(s) = s^α 中的指数 (α <= 1)
        v: 奖金 (> 0)
        cost_coeffs: 线性成本系数 (c_1, c_2)
        box: 两个区间，必须位于 (0, ∞) 内
    """
    if len(box) != 2 or len(cost_coeffs) != 2:
        raise InvalidParameter("竞赛博弈只有两个玩家")
    for lo, hi in box:
        if not lo > 0:
            raise BoxNotPositive(f"区间 [{lo}, {hi}] 必须位于 (0, ∞) 内")
    values = [alpha, v] + list(cost_coeffs)
    if not all(math.isfinite(x) for x in values):
        raise InvalidParameter("参数必须为有限数")
    if alpha > 1:
        raise InvalidParameter(f"alpha 必须 <= 1: {alpha}")
    if v <= 0:
        raise InvalidParameter(f"奖金 v 必须为正: {v}")
    payoffs = tuple(partial(_contest_payoff, player=i, alpha=float(alpha), v=float(v),
                            cost=float(cost_coeffs[i])) for i in range(2))
    return SmoothGame(tuple(box), payoffs, 'contest')


# ============ 内置博弈 ============
def _cournot_payoff(s: np.ndarray, player: int, a: float) -> float:
    return s[player] * (a - s[0] - s[1])


def _bilinear_payoff(s: np.ndarray, sign: float, scale: float) -> float:
    return sign * scale * s[0] * s[1]


def _separable_payoff(s: np.ndarray, player: int) -> float:
    extra = math.sin(s[1]) if player == 0 else math.cos(s[0])
    return s[0] * s[1] + extra


def cournot_game(a: float = 10.0, box: Sequence = ((0.0, 5.0), (0.0, 5.0))) -> SmoothGame:
    """古诺博弈 u^(i) = s_i (a - s_1 - s_2)"""
    return SmoothGame(tuple(box), tuple(partial(_cournot_payoff, player=i, a=float(a))
                                        for i in range(2)), 'cournot')


def bilinear_game(sign: float = -1.0, scale: float = 1.0,
                  box: Sequence = ((0.0, 1.0), (0.0, 1.0))) -> SmoothGame:
    """u^(1) = scale*s_1 s_2, u^(2) = sign*scale*s_1 s_2（sign=-1 零和，sign=+1 共同利益）"""
    payoffs = (partial(_bilinear_payoff, sign=1.0, scale=float(scale)),
               partial(_bilinear_payoff, sign=float(sign), scale=float(scale)))
    return SmoothGame(tuple(box), payoffs, 'bilinear')


def separable_potential_game(box: Sequence = ((0.0, 1.0), (0.0, 1.0))) -> SmoothGame:
    """u^(1) = s_1 s_2 + sin(s_2), u^(2) = s_1 s_2 + cos(s_1)"""
    return SmoothGame(tuple(box), tuple(partial(_separable_payoff, player=i) for i in range(2)),
                      'separable-potential')


def _build_contest(params: dict, box) -> SmoothGame:
    return contest_game(params['alpha'], params['v'], (params['c1'], params['c2']), box)


BUILTINS = {
    'contest': _build_contest,
    'cournot': lambda p, box: cournot_game(p['a'], box),
    'bilinear-zero-sum': lambda p, box: bilinear_game(-1.0, p['scale'], box),
    'bilinear-common': lambda p, box: bilinear_game(1.0, p['scale'], box),
    'separable-potential': lambda p, box: separable_potential_game(box),
}


def build_builtin(name: str, params: dict = None, box: Optional[Sequence] = None) -> SmoothGame:
    """
    按名称创建内置博弈

    Args:
        name: 注册名称
        params: 覆盖默认参数的数值参数
        box: 覆盖默认区间
    """
    if name not in BUILTINS:
        raise UnknownBuiltin(f"未知的内置博弈: {name}（可选: {', '.join(sorted(BUILTINS))}）")
    defaults = BUILTIN_DEFAULTS[name]
    merged = dict(defaults['params'])
    for key, value in (params or {}).items():
        if key not in merged:
            raise InvalidParameter(f"{name} 不接受参数 {key}（可选: {', '.join(merged) or '无'}）")
        merged[key] = float(value)
    game = BUILTINS[name](merged, tuple(box) if box is not None else defaults['box'])
    return SmoothGame(game.box, game.payoffs, name)
