# -*- coding: utf-8 -*-
"""
构造模块 - 势函数提取、零和规范化与两种表示形式

    势博弈:     u^(i) = v + g^(i)(s_{-i})
    零和等价:   u^(i) = v^(i) + g^(i)(s_{-i}),  sum_i v^(i) = 0

所有构造结果都会事后验证，构造错误不会静默通过。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.averaging_ops import telescoping_passives
from src.classifiers import (
    TestVerdict, check_tolerance, make_verdict, potential_test, zero_sum_equiv_test
)
from src.exceptions import (
    ShapeMismatch, NotAPotentialGame, NotZeroSumEquivalent, WrongPlayerCount
)
from src.game_model import FiniteGame, PassiveGame

logger = logging.getLogger(__name__)


def _tensor_list(tensors) -> list:
    return [np.asarray(t).tolist() for t in tensors]


@dataclass(frozen=True, eq=False)
class PotentialDecomposition:
    """势函数 v 与被动部分 g^(i)，基准点 s* = (0,...,0) 处 v(s*) = 0"""
    v: np.ndarray
    passives: tuple
    residual: float

    def to_dict(self) -> dict:
        return {
            'v': self.v.tolist(),
            'passives': [g.to_dict() for g in self.passives],
            'residual': float(self.residual),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'PotentialDecomposition':
        return cls(np.asarray(data['v'], dtype=float),
                   tuple(PassiveGame.from_dict(g) for g in data['passives']),
                   float(data['residual']))


@dataclass(frozen=True, eq=False)
class ZeroSumRepresentation:
    """零和规范化 (v^(i), g^(i))，c 为 sum_i v^(i) 在全零策略组合处的值"""
    vs: tuple
    passives: tuple
    residual: float
    c: float = 0.0

    def to_dict(self) -> dict:
        return {
            'vs': _tensor_list(self.vs),
            'passives': [g.to_dict() for g in self.passives],
            'residual': float(self.residual),
            'c': float(self.c),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'ZeroSumRepresentation':
        return cls(tuple(np.asarray(v, dtype=float) for v in data['vs']),
                   tuple(PassiveGame.from_dict(g) for g in data['passives']),
                   float(data['residual']), float(data.get('c', 0.0)))


@dataclass(frozen=True, eq=False)
class UiRepresentation:
    """
    表示形式 u^(i) = w + sum_{l!=i} g^(l)        (势博弈, kind='potential')
           或 u^(i) = w^(i) + sum_{l!=i} g^(l)    (零和等价, kind='zero_sum', sum_i w^(i) = c)
    """
    kind: str
    ws: tuple
    passives: tuple
    residual: float
    constant: Optional[float] = None

    @property
    def w(self) -> np.ndarray:
        """势博弈情形下的公共函数 w"""
        return self.ws[0]

    def to_dict(self) -> dict:
        data = {'kind': self.kind}
        if self.kind == 'potential':
            data['w'] = self.ws[0].tolist()
        else:
            data['ws'] = _tensor_list(self.ws)
            data['c'] = float(self.constant)
        data['passives'] = [g.to_dict() for g in self.passives]
        data['residual'] = float(self.residual)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'UiRepresentation':
        if data['kind'] == 'potential':
            ws = (np.asarray(data['w'], dtype=float),)
        else:
            ws = tuple(np.asarray(w, dtype=float) for w in data['ws'])
        return cls(data['kind'], ws,
                   tuple(PassiveGame.from_dict(g) for g in data['passives']),
                   float(data['residual']), data.get('c'))


# ============ 势博弈 ============
def _potential_by_paths(game: FiniteGame) -> np.ndarray:
    """
    沿路径 s* -> (s_1, s*_2, ...) -> ... -> s 累加单边偏离的收益差

        v(s) = sum_k [u^(k)(s_1..s_k, s*_{k+1}..) - u^(k)(s_1..s_{k-1}, s*_k, ..)]
    """
    n, sizes = game.n, game.sizes
    v = np.zeros(sizes)
    for k in range(n):
        fixed = (slice(None),) * (k + 1) + (slice(0, 1),) * (n - k - 1)
        head = game.payoffs[k][fixed]
        v = v + (head - head[(slice(None),) * k + (slice(0, 1),)])
    return v


def extract_potential(game: FiniteGame, tol: float = None) -> PotentialDecomposition:
    """
    提取势函数

    Args:
        game: 有限博弈
        tol: 容差

    Returns:
        PotentialDecomposition，v(0,...,0) = 0，g^(i) 取 (u^(i) - v) 在 s_i = 0 的切片
    """
    tol = check_tolerance(tol)
    test = potential_test(game, tol)
    if not test.passed:
        raise NotAPotentialGame(f"势博弈检验未通过: residual={test.residual:.3e}")

    v = _potential_by_paths(game)
    passives = []
    raw = 0.0
    for i, u in enumerate(game.payoffs):
        diff = u - v
        g = PassiveGame(i, np.take(diff, [0], axis=i))
        raw = max(raw, float(np.abs(diff - g.expand(game.sizes)).max()))
        passives.append(g)
    residual = raw / game.scale()
    if residual > tol:
        raise NotAPotentialGame(f"构造残差过大: {residual:.3e}")

    check = verify_potential(game, v, tol)
    if not check.passed:
        raise NotAPotentialGame(f"势函数验证未通过: residual={check.residual:.3e}")
    logger.debug("势函数提取完成: residual=%.3e", residual)
    return PotentialDecomposition(v, tuple(passives), residual)


def verify_potential(game: FiniteGame, v, tol: float = None) -> TestVerdict:
    """
    单边偏离条件: u^(i)(s_i,s_{-i}) - u^(i)(s̃_i,s_{-i}) = v(s_i,s_{-i}) - v(s̃_i,s_{-i})

    对固定 s_{-i}，所有 (s_i, s̃_i) 上的最大违反量等于 u^(i) - v 沿第 i 轴的极差。
    """
    tol = check_tolerance(tol)
    v = np.asarray(v, dtype=float)
    if v.shape != game.sizes:
        raise ShapeMismatch(f"势函数形状 {v.shape} 应为 {game.sizes}")
    best, witness, ops = 0.0, None, 0
    for i, u in enumerate(game.payoffs):
        diff = u - v
        spread = diff.max(axis=i, keepdims=True) - diff.min(axis=i, keepdims=True)
        ops += diff.size * game.sizes[i]
        k = int(np.argmax(spread))
        value = float(spread.flat[k])
        if value > best:
            profile = [int(x) for x in np.unravel_index(k, spread.shape)]
            line = diff[tuple(profile[:i]) + (slice(None),) + tuple(profile[i + 1:])]
            profile[i] = int(np.argmax(line))
            best = value
            witness = {'player': i, 'profile': profile, 'deviation': int(np.argmin(line))}
    return make_verdict('verify_potential', best, game.scale(), tol, witness, ops)


def potential_representation(game: FiniteGame, tol: float = None) -> UiRepresentation:
    """
    势博弈表示 u^(i) = w + sum_{l!=i} h^(l)(s_{-l})

    取 w = v + sum_l g^(l)，h^(l) = -g^(l)。
    """
    tol = check_tolerance(tol)
    dec = extract_potential(game, tol)
    sizes = game.sizes
    full = [g.expand(sizes) for g in dec.passives]
    w = dec.v + sum(full)
    passives = tuple(PassiveGame(g.player, -g.table) for g in dec.passives)
    residual = _representation_residual(game, [w] * game.n, passives)
    if residual > tol:
        raise NotAPotentialGame(f"表示形式残差过大: {residual:.3e}")
    return UiRepresentation('potential', (w,), passives, residual)


# ============ 零和等价 ============
def zero_sum_normalize(game: FiniteGame, tol: float = None,
                       check: bool = True) -> ZeroSumRepresentation:
    """
    零和规范化

    对 U = sum_i u^(i) 取 g^(1) = T̂_1 U, g^(j) = T_1...T_{j-1} T̂_j U，
    v^(i) = u^(i) - g^(i)；残差为 max|sum_i v^(i)| / scale。

    Args:
        game: 有限博弈
        tol: 容差
        check: 是否先运行零和等价检验（对照实验中可关闭）
    """
    tol = check_tolerance(tol)
    if check:
        test = zero_sum_equiv_test(game, tol)
        if not test.passed:
            raise NotZeroSumEquivalent(f"零和等价检验未通过: residual={test.residual:.3e}")

    tables = telescoping_passives(game.payoff_sum(), game.space)
    passives = tuple(PassiveGame(i, t) for i, t in enumerate(tables))
    vs = tuple(u - g.expand(game.sizes) for u, g in zip(game.payoffs, passives))
    total = np.zeros(game.sizes)
    for v in vs:
        total = total + v
    residual = float(np.abs(total).max()) / game.scale()
    logger.debug("零和规范化: residual=%.3e", residual)
    c = float(total.flat[0]) + 0.0
    return ZeroSumRepresentation(vs, passives, residual, c)


def zero_sum_representation(game: FiniteGame, tol: float = None) -> UiRepresentation:
    """
    零和等价表示 u^(i) = w^(i) + sum_{l!=i} g^(l)/(n-1)，sum_i w^(i) = c

        w^(i) = u^(i) - (1/(n-1)) sum_{l!=i} g^(l)
    """
    tol = check_tolerance(tol)
    if game.n < 2:
        raise WrongPlayerCount("零和表示需要至少两个玩家")
    norm = zero_sum_normalize(game, tol)
    sizes, n = game.sizes, game.n
    passives = tuple(PassiveGame(g.player, g.table / (n - 1)) for g in norm.passives)
    full = [g.expand(sizes) for g in passives]
    total = sum(full)
    ws = tuple(u - (total - f) for u, f in zip(game.payoffs, full))
    wsum = sum(ws)
    c = float(wsum[(0,) * n])
    residual = max(float(np.abs(wsum - c).max()) / game.scale(),
                   _representation_residual(game, ws, passives))
    if residual > tol:
        raise NotZeroSumEquivalent(f"表示形式残差过大: {residual:.3e}")
    return UiRepresentation('zero_sum', ws, passives, residual, c)


# ============ 刻画条件 ============
def _representation_residual(game: FiniteGame, ws: Sequence, passives: Sequence) -> float:
    """max_i max|u^(i) - w^(i) - sum_{l!=i} h^(l)| / scale"""
    full = [g.expand(game.sizes) for g in passives]
    total = sum(full)
    raw = max(float(np.abs(u - w - (total - f)).max())
              for u, w, f in zip(game.payoffs, ws, full))
    return raw / game.scale()


def characterization_residual(game: FiniteGame, passives: Sequence[PassiveGame],
                              kind: str = 'potential') -> float:
    """
    不含未知函数 v 的刻画条件

        kind='potential': u^(i) - g^(i) 对所有 i 相同
        kind='zero_sum':  sum_i [u^(i) - g^(i)] = 0

    Returns:
        归一化后的最大违反量
    """
    reduced = [u - g.expand(game.sizes) for u, g in zip(game.payoffs, passives)]
    if kind == 'potential':
        raw = max(float(np.abs(r - reduced[0]).max()) for r in reduced)
    elif kind == 'zero_sum':
        raw = float(np.abs(sum(reduced)).max())
    else:
        raise ValueError(f"未知的刻画类型: {kind}")
    return raw / game.scale()
