# -*- coding: utf-8 -*-
"""
分类检验模块 - 积分检验、循环条件与 Sandholm 两人条件

    势博弈:     T_i T_j (u^(i) - u^(j)) = 0            对所有 i < j
    零和等价:   prod_l T_l (sum_i u^(i)) = 0

残差均按 max(1, max|u|) 归一化，passed <=> residual <= tol。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, asdict
from itertools import combinations
from typing import Optional

import numpy as np

from config.settings import DEFAULT_TOL
from src.averaging_ops import t_product
from src.exceptions import InvalidTolerance, WrongPlayerCount, NonUniformWeights
from src.game_model import FiniteGame

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TestVerdict:
    """
    单项检验结果

    Attributes:
        test: 检验名称
        passed: residual <= tolerance
        residual: 归一化后的最大违反量
        tolerance: 使用的阈值
        scale: 归一化因子（原始残差 = residual * scale）
        witness: 最大残差出现的位置（residual > 0 时给出）
        operations: 检查的等式个数
        note: 附注（如导数检验的 "numerical evidence"）
    """
    __test__ = False  # 不是 pytest 测试类

    test: str
    passed: bool
    residual: float
    tolerance: float
    scale: float = 1.0
    witness: Optional[dict] = None
    operations: int = 0
    note: Optional[str] = None

    @property
    def raw_residual(self) -> float:
        return self.residual * self.scale

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> 'TestVerdict':
        return cls(**data)


@dataclass(frozen=True)
class ClassificationReport:
    """classify 的汇总报告"""
    n_players: int
    sizes: tuple
    potential: TestVerdict
    zero_sum_equivalent: TestVerdict
    exact_zero_sum: bool
    common_interest: bool

    def to_dict(self) -> dict:
        return {
            'n_players': self.n_players,
            'sizes': list(self.sizes),
            'potential': self.potential.to_dict(),
            'zero_sum_equivalent': self.zero_sum_equivalent.to_dict(),
            'exact_zero_sum': self.exact_zero_sum,
            'common_interest': self.common_interest,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'ClassificationReport':
        return cls(
            n_players=data['n_players'],
            sizes=tuple(data['sizes']),
            potential=TestVerdict.from_dict(data['potential']),
            zero_sum_equivalent=TestVerdict.from_dict(data['zero_sum_equivalent']),
            exact_zero_sum=data['exact_zero_sum'],
            common_interest=data['common_interest'],
        )


# ============ 内部工具 ============
def check_tolerance(tol) -> float:
    """校验容差，None 表示默认值"""
    if tol is None:
        return DEFAULT_TOL
    tol = float(tol)
    if not math.isfinite(tol) or tol <= 0:
        raise InvalidTolerance(f"容差必须为正的有限数: {tol}")
    return tol


def make_verdict(test: str, raw: float, scale: float, tol: float,
                 witness: Optional[dict], operations: int, note: str = None) -> TestVerdict:
    residual = raw / scale
    return TestVerdict(
        test=test,
        passed=bool(residual <= tol),
        residual=float(residual),
        tolerance=tol,
        scale=float(scale),
        witness=witness if residual > 0 else None,
        operations=int(operations),
        note=note,
    )


def _first_max(r: np.ndarray) -> tuple:
    """最大值及其按字典序最先出现的位置"""
    k = int(np.argmax(r))
    return float(r.flat[k]), [int(x) for x in np.unravel_index(k, r.shape)]


# ============ 检验 ============
def potential_test(game: FiniteGame, tol: float = None) -> TestVerdict:
    """
    势博弈积分检验

    对所有 i < j 计算 T_i T_j (u^(i) - u^(j))；n = 1 时无玩家对，直接通过。
    """
    tol = check_tolerance(tol)
    u, space = game.payoffs, game.space
    best, witness, ops = 0.0, None, 0
    for i, j in combinations(range(game.n), 2):
        r = np.abs(t_product(u[i] - u[j], space, [i, j]))
        ops += r.size
        value, profile = _first_max(r)
        if value > best:
            best, witness = value, {'pair': [i, j], 'profile': profile}
    verdict = make_verdict('potential', best, game.scale(), tol, witness, ops)
    logger.debug("势博弈检验: residual=%.3e passed=%s", verdict.residual, verdict.passed)
    return verdict


def zero_sum_equiv_test(game: FiniteGame, tol: float = None) -> TestVerdict:
    """零和等价积分检验: prod_l T_l sum_i u^(i) = 0"""
    tol = check_tolerance(tol)
    r = np.abs(t_product(game.payoff_sum(), game.space, range(game.n)))
    value, profile = _first_max(r)
    verdict = make_verdict('zero_sum_equivalent', value, game.scale(), tol,
                           {'profile': profile}, r.size)
    logger.debug("零和等价检验: residual=%.3e passed=%s", verdict.residual, verdict.passed)
    return verdict


def cycle_test(game: FiniteGame, tol: float = None) -> TestVerdict:
    """
    循环条件（穷举）

    对每对玩家 (i, j)、其余玩家策略 s_{-i,j}、以及 (s_i, s̃_i)、(s_j, s̃_j) 计算四项循环和:

        [u^i(s̃_i,s_j) - u^i(s_i,s_j)] + [u^j(s̃_i,s̃_j) - u^j(s̃_i,s_j)]
      + [u^i(s_i,s̃_j) - u^i(s̃_i,s̃_j)] + [u^j(s_i,s_j) - u^j(s_i,s̃_j)]

    工作量 O(sum_{i<j} k_i^2 k_j^2 prod_{l!=i,j} k_l)，仅作为独立对照。
    """
    tol = check_tolerance(tol)
    sizes = game.sizes
    best, witness, ops = 0.0, None, 0
    for i, j in combinations(range(game.n), 2):
        ki, kj = sizes[i], sizes[j]
        others = [l for l in range(game.n) if l not in (i, j)]
        rest_shape = tuple(sizes[l] for l in others)
        ui = np.moveaxis(game.payoffs[i], (i, j), (0, 1)).reshape(ki, kj, -1)
        uj = np.moveaxis(game.payoffs[j], (i, j), (0, 1)).reshape(ki, kj, -1)

        # 下标顺序 (s̃_i, s_j, s̃_j, rest)
        second = uj[:, None, :, :] - uj[:, :, None, :]
        for a in range(ki):
            ui_a, uj_a = ui[a], uj[a]
            total = (ui[:, :, None, :] - ui_a[None, :, None, :]) + second
            total += ui_a[None, None, :, :] - ui[:, None, :, :]
            total += uj_a[None, :, None, :] - uj_a[None, None, :, :]
            r = np.abs(total)
            ops += r.size
            value, (b, c, d, rest) = _first_max(r)
            if value > best:
                profile = [0] * game.n
                profile[i], profile[j] = a, c
                rest_idx = np.unravel_index(rest, rest_shape) if rest_shape else ()
                for l, s in zip(others, rest_idx):
                    profile[l] = int(s)
                best = value
                witness = {'pair': [i, j], 'profile': profile, 'deviation': [b, d]}
    verdict = make_verdict('cycle', best, game.scale(), tol, witness, ops)
    logger.debug("循环条件: residual=%.3e operations=%d", verdict.residual, ops)
    return verdict


def sandholm_test_2p(game: FiniteGame, tol: float = None) -> TestVerdict:
    """
    两人博弈的双重中心化条件 (计数测度)

        A - 列均值 - 行均值 + 总均值 = B - 列均值 - 行均值 + 总均值
    """
    tol = check_tolerance(tol)
    if game.n != 2:
        raise WrongPlayerCount(f"该检验只适用于两人博弈 (n={game.n})")
    if not game.space.is_uniform:
        raise NonUniformWeights("该检验要求计数测度")

    def double_center(m: np.ndarray) -> np.ndarray:
        return m - m.mean(axis=0, keepdims=True) - m.mean(axis=1, keepdims=True) + m.mean()

    a, b = game.payoffs
    r = np.abs(double_center(a) - double_center(b))
    value, profile = _first_max(r)
    return make_verdict('sandholm', value, game.scale(), tol,
                        {'pair': [0, 1], 'profile': profile}, r.size)


def classify(game: FiniteGame, tol: float = None) -> ClassificationReport:
    """
    运行势博弈与零和等价检验，并判断是否精确零和 / 共同利益

    Returns:
        ClassificationReport
    """
    tol = check_tolerance(tol)
    bound = tol * game.scale()
    u = game.payoffs
    # max|T_l h| <= 2 max|h|，标记门限按此收紧
    exact_zero_sum = float(np.abs(game.payoff_sum()).max()) <= bound / 2 ** game.n
    common_interest = all(float(np.abs(u[i] - u[j]).max()) <= bound / 4
                          for i, j in combinations(range(game.n), 2))
    return ClassificationReport(
        n_players=game.n,
        sizes=tuple(game.sizes),
        potential=potential_test(game, tol),
        zero_sum_equivalent=zero_sum_equiv_test(game, tol),
        exact_zero_sum=bool(exact_zero_sum),
        common_interest=bool(common_interest),
    )
