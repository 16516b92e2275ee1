# -*- coding: utf-8 -*-
"""
博弈数据模块 - 有限博弈、带权策略空间、被动博弈与 JSON 交换格式

约定:
    - 收益张量稠密存储，玩家 1 的轴在最外层，按行优先顺序展开
    - 策略组合 s 是每个玩家的策略下标组成的元组
    - 所有对象构造后不可变（数组设为只读）
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from config.settings import JSON_INDENT
from src.exceptions import (
    GameError, ShapeMismatch, NonPositiveWeight, NonFiniteEntry,
    IndexOutOfRange, MalformedJson, SchemaViolation
)

logger = logging.getLogger(__name__)

JSON_FIELDS = ('players', 'sizes', 'payoffs', 'weights', 'labels')
REQUIRED_FIELDS = ('players', 'sizes', 'payoffs')


def _readonly(values, dtype=float) -> np.ndarray:
    """复制为只读 float64 数组"""
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


def collapsed_shape(sizes: Sequence[int], axis: int) -> tuple:
    """第 axis 轴长度压缩为 1 后的形状（被动博弈表的形状）"""
    shape = list(sizes)
    shape[axis] = 1
    return tuple(shape)


@dataclass(frozen=True, eq=False)
class WeightedStrategySpace:
    """
    带权策略空间 S = S_1 x ... x S_n

    Attributes:
        sizes: 每个玩家的策略数 (|S_1|, ..., |S_n|)
        weights: 每个玩家每个策略的权重 m_i({s_i})，默认全为 1（计数测度）
    """
    sizes: tuple
    weights: Optional[tuple] = None

    def __post_init__(self):
        sizes = tuple(self.sizes)
        if len(sizes) < 1:
            raise ShapeMismatch("至少需要 1 个玩家")
        for k in sizes:
            if isinstance(k, bool) or int(k) != k or k < 1:
                raise ShapeMismatch(f"策略数必须为正整数: {k}")
        sizes = tuple(int(k) for k in sizes)

        if self.weights is None:
            weights = tuple(_readonly(np.ones(k)) for k in sizes)
        else:
            if len(self.weights) != len(sizes):
                raise ShapeMismatch(
                    f"权重列表数 {len(self.weights)} 与玩家数 {len(sizes)} 不一致")
            weights = []
            for i, (k, w) in enumerate(zip(sizes, self.weights)):
                try:
                    w = _readonly(w)
                except (TypeError, ValueError) as e:
                    raise NonPositiveWeight(f"玩家 {i} 的权重无法解析: {e}") from e
                if w.shape != (k,):
                    raise ShapeMismatch(f"玩家 {i} 的权重长度 {w.shape} 应为 ({k},)")
                if not np.all(np.isfinite(w)) or np.any(w <= 0):
                    raise NonPositiveWeight(f"玩家 {i} 的权重必须为正的有限数")
                weights.append(w)
            weights = tuple(weights)

        object.__setattr__(self, 'sizes', sizes)
        object.__setattr__(self, 'weights', weights)

    @classmethod
    def counting(cls, sizes: Sequence[int]) -> 'WeightedStrategySpace':
        """计数测度下的策略空间"""
        return cls(tuple(sizes))

    @property
    def n(self) -> int:
        return len(self.sizes)

    @property
    def shape(self) -> tuple:
        return self.sizes

    def total_weight(self, i: int) -> float:
        """m_i(S_i)"""
        return float(self.weights[i].sum())

    def axis_weights(self, i: int) -> np.ndarray:
        """第 i 个玩家的权重，整形为可沿第 i 轴广播的形状"""
        shape = [1] * self.n
        shape[i] = self.sizes[i]
        return self.weights[i].reshape(shape)

    @property
    def is_counting(self) -> bool:
        return all(np.all(w == 1.0) for w in self.weights)

    @property
    def is_uniform(self) -> bool:
        """每个玩家内部权重相同（与计数测度的均值一致）"""
        return all(np.all(w == w[0]) for w in self.weights)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedStrategySpace):
            return NotImplemented
        return (self.sizes == other.sizes
                and all(np.array_equal(a, b) for a, b in zip(self.weights, other.weights)))


@dataclass(frozen=True, eq=False)
class FiniteGame:
    """
    有限博弈 u = (u^(1), ..., u^(n))

    Attributes:
        space: 带权策略空间
        payoffs: n 个收益张量，形状均为 space.sizes
        labels: 可选的策略名称（仅用于显示）
    """
    space: WeightedStrategySpace
    payoffs: tuple
    labels: Optional[tuple] = None

    def __post_init__(self):
        space = self.space
        if len(self.payoffs) != space.n:
            raise ShapeMismatch(f"收益张量数 {len(self.payoffs)} 与玩家数 {space.n} 不一致")

        payoffs = []
        for i, table in enumerate(self.payoffs):
            try:
                arr = _readonly(table)
            except (TypeError, ValueError) as e:
                raise ShapeMismatch(f"玩家 {i} 的收益张量不规则: {e}") from e
            if arr.shape != space.sizes:
                raise ShapeMismatch(f"玩家 {i} 的收益形状 {arr.shape} 应为 {space.sizes}")
            if not np.all(np.isfinite(arr)):
                raise NonFiniteEntry(f"玩家 {i} 的收益包含非有限值")
            payoffs.append(arr)

        labels = None
        if self.labels is not None:
            if len(self.labels) != space.n:
                raise ShapeMismatch("策略名称列表数与玩家数不一致")
            labels = []
            for i, names in enumerate(self.labels):
                if len(names) != space.sizes[i]:
                    raise ShapeMismatch(f"玩家 {i} 的策略名称数应为 {space.sizes[i]}")
                labels.append(tuple(str(x) for x in names))
            labels = tuple(labels)

        object.__setattr__(self, 'payoffs', tuple(payoffs))
        object.__setattr__(self, 'labels', labels)

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def sizes(self) -> tuple:
        return self.space.sizes

    def max_abs(self) -> float:
        """所有玩家收益的最大绝对值"""
        return float(max(np.abs(p).max() for p in self.payoffs))

    def scale(self) -> float:
        """残差归一化因子 max(1, max|u|)"""
        return max(1.0, self.max_abs())

    def payoff_sum(self) -> np.ndarray:
        """U = sum_i u^(i)"""
        total = np.zeros(self.sizes)
        for p in self.payoffs:
            total = total + p
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGame):
            return NotImplemented
        return (self.space == other.space
                and all(np.array_equal(a, b) for a, b in zip(self.payoffs, other.payoffs))
                and self.labels == other.labels)


@dataclass(frozen=True, eq=False)
class PassiveGame:
    """
    被动博弈 g^(i)(s_{-i})：第 i 个玩家的收益与自身策略无关

    table 的第 player 轴长度为 1，按需沿该轴广播到完整形状。
    """
    player: int
    table: np.ndarray

    def __post_init__(self):
        table = _readonly(self.table)
        if table.ndim <= self.player or self.player < 0:
            raise ShapeMismatch(f"被动博弈表维数 {table.ndim} 不含玩家 {self.player} 的轴")
        if table.shape[self.player] != 1:
            raise ShapeMismatch(f"被动博弈表第 {self.player} 轴长度应为 1，实际 {table.shape}")
        if not np.all(np.isfinite(table)):
            raise NonFiniteEntry("被动博弈表包含非有限值")
        object.__setattr__(self, 'player', int(self.player))
        object.__setattr__(self, 'table', table)

    @classmethod
    def zeros(cls, space: WeightedStrategySpace, player: int) -> 'PassiveGame':
        return cls(player, np.zeros(collapsed_shape(space.sizes, player)))

    def expand(self, sizes: Sequence[int]) -> np.ndarray:
        """广播到完整形状（只读视图）"""
        sizes = tuple(sizes)
        if self.table.shape != collapsed_shape(sizes, self.player):
            raise ShapeMismatch(f"被动博弈表形状 {self.table.shape} 与 {sizes} 不兼容")
        return np.broadcast_to(self.table, sizes)

    def to_dict(self) -> dict:
        return {'player': self.player, 'table': self.table.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> 'PassiveGame':
        return cls(int(data['player']), np.asarray(data['table'], dtype=float))


# ============ 构造与读取 ============
def new_game(sizes: Sequence[int], payoffs: Sequence, weights: Sequence = None,
             labels: Sequence = None) -> FiniteGame:
    """
    创建并校验有限博弈

    Args:
        sizes: 每个玩家的策略数
        payoffs: n 个收益张量（嵌套列表或数组）
        weights: 可选的策略权重，默认计数测度
        labels: 可选的策略名称

    Returns:
        FiniteGame
    """
    space = WeightedStrategySpace(tuple(sizes), None if weights is None else tuple(weights))
    return FiniteGame(space, tuple(payoffs), None if labels is None else tuple(labels))


def payoff(game: FiniteGame, player: int, profile: Sequence[int]) -> float:
    """返回 u^(player)(profile)"""
    if not 0 <= player < game.n:
        raise IndexOutOfRange(f"玩家下标 {player} 越界 (n={game.n})")
    profile = tuple(profile)
    if len(profile) != game.n:
        raise IndexOutOfRange(f"策略组合长度 {len(profile)} 应为 {game.n}")
    for i, (s, k) in enumerate(zip(profile, game.sizes)):
        if not 0 <= s < k:
            raise IndexOutOfRange(f"玩家 {i} 的策略下标 {s} 越界 (共 {k} 个)")
    return float(game.payoffs[player][profile])


def add_passive(game: FiniteGame, passives: Sequence[PassiveGame]) -> FiniteGame:
    """
    加上被动博弈: u^(i) -> u^(i) + g^(i)(s_{-i})

    结果与原博弈策略等价（纳什均衡与最优反应不变）。
    """
    if len(passives) != game.n:
        raise ShapeMismatch(f"被动博弈数 {len(passives)} 与玩家数 {game.n} 不一致")
    payoffs = []
    for i, (u, g) in enumerate(zip(game.payoffs, passives)):
        if g.player != i:
            raise ShapeMismatch(f"第 {i} 个被动博弈对应玩家 {g.player}")
        payoffs.append(u + g.expand(game.sizes))
    return FiniteGame(game.space, tuple(payoffs), game.labels)


# ============ JSON 交换格式 ============
def _reject_constant(name: str):
    raise SchemaViolation(f"不允许非有限数值: {name}")


def _numeric_tensor(obj, what: str) -> np.ndarray:
    """将嵌套列表转为数值数组，拒绝不规则或非数值输入"""
    try:
        arr = np.asarray(obj)
    except ValueError as e:
        raise SchemaViolation(f"{what} 不规则: {e}") from e
    if arr.dtype.kind not in 'iuf' or arr.dtype == bool:
        raise SchemaViolation(f"{what} 必须是数值嵌套数组")
    return arr.astype(float)


def parse_game_json(text) -> FiniteGame:
    """
    解析 JSON 博弈

    Args:
        text: UTF-8 字节串（也接受 str）

    Returns:
        FiniteGame
    """
    try:
        if isinstance(text, (bytes, bytearray)):
            text = bytes(text).decode('utf-8')
        data = json.loads(text, parse_constant=_reject_constant)
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise MalformedJson(f"JSON 解析失败: {e}") from e

    if not isinstance(data, dict):
        raise SchemaViolation("顶层必须是对象")
    unknown = sorted(set(data) - set(JSON_FIELDS))
    if unknown:
        raise SchemaViolation(f"未知字段: {unknown}")
    missing = [k for k in REQUIRED_FIELDS if k not in data]
    if missing:
        raise SchemaViolation(f"缺少字段: {missing}")

    players, sizes = data['players'], data['sizes']
    if isinstance(players, bool) or not isinstance(players, int) or players < 1:
        raise SchemaViolation("players 必须是正整数")
    if (not isinstance(sizes, list) or len(sizes) != players
            or any(isinstance(k, bool) or not isinstance(k, int) for k in sizes)):
        raise SchemaViolation("sizes 必须是长度为 players 的整数列表")
    if not isinstance(data['payoffs'], list) or len(data['payoffs']) != players:
        raise SchemaViolation("payoffs 必须是长度为 players 的列表")

    payoffs = [_numeric_tensor(t, f"payoffs[{i}]") for i, t in enumerate(data['payoffs'])]

    weights = data.get('weights')
    if weights is not None:
        if not isinstance(weights, list) or len(weights) != players:
            raise SchemaViolation("weights 必须是长度为 players 的列表")
        weights = [_numeric_tensor(w, f"weights[{i}]") for i, w in enumerate(weights)]

    labels = data.get('labels')
    if labels is not None:
        if (not isinstance(labels, list) or len(labels) != players
                or any(not isinstance(names, list) for names in labels)):
            raise SchemaViolation("labels 必须是长度为 players 的列表的列表")

    try:
        game = new_game(sizes, payoffs, weights, labels)
    except GameError as e:
        raise SchemaViolation(str(e)) from e
    logger.debug("解析博弈: n=%d sizes=%s", game.n, game.sizes)
    return game


def serialize_game(game: FiniteGame) -> bytes:
    """序列化为 UTF-8 JSON；计数测度时省略 weights"""
    data = {
        'players': game.n,
        'sizes': list(game.sizes),
        'payoffs': [p.tolist() for p in game.payoffs],
    }
    if not game.space.is_counting:
        data['weights'] = [w.tolist() for w in game.space.weights]
    if game.labels is not None:
        data['labels'] = [list(names) for names in game.labels]
    text = json.dumps(data, ensure_ascii=False, indent=JSON_INDENT, allow_nan=False)
    return (text + '\n').encode('utf-8')


# ============ 常用博弈与随机生成 ============
def matching_pennies() -> FiniteGame:
    """猜硬币: A = [[1,-1],[-1,1]], B = -A"""
    a = np.array([[1.0, -1.0], [-1.0, 1.0]])
    return new_game([2, 2], [a, -a])


def battle_of_sexes() -> FiniteGame:
    """性别之战: A = [[3,0],[0,2]], B = [[2,0],[0,3]]"""
    return new_game([2, 2], [[[3.0, 0.0], [0.0, 2.0]], [[2.0, 0.0], [0.0, 3.0]]])


def common_interest_game(v, weights: Sequence = None) -> FiniteGame:
    """共同利益博弈: 所有玩家收益都等于 v"""
    v = np.asarray(v, dtype=float)
    return new_game(v.shape, [v] * v.ndim, weights)


def random_weights(rng: np.random.Generator, sizes: Sequence[int]) -> list:
    """随机正权重，取值 [0.5, 2)"""
    return [rng.uniform(0.5, 2.0, size=k) for k in sizes]


def random_game(rng: np.random.Generator, sizes: Sequence[int], weights: Sequence = None,
                low: float = -1.0, high: float = 1.0) -> FiniteGame:
    """收益在 [low, high) 上均匀分布的随机博弈"""
    sizes = tuple(sizes)
    payoffs = [rng.uniform(low, high, size=sizes) for _ in sizes]
    return new_game(sizes, payoffs, weights)


def random_passives(rng: np.random.Generator, space: WeightedStrategySpace,
                    scale: float = 1.0) -> list:
    """每个玩家一个随机被动博弈"""
    return [PassiveGame(i, rng.uniform(-scale, scale, size=collapsed_shape(space.sizes, i)))
            for i in range(space.n)]


def planted_potential_game(rng: np.random.Generator, sizes: Sequence[int],
                           weights: Sequence = None) -> tuple:
    """
    构造势博弈 u^(i) = v + g^(i)(s_{-i})

    Returns:
        (game, v)
    """
    sizes = tuple(sizes)
    v = rng.uniform(-1.0, 1.0, size=sizes)
    base = new_game(sizes, [v] * len(sizes), weights)
    return add_passive(base, random_passives(rng, base.space)), v


def planted_zero_sum_game(rng: np.random.Generator, sizes: Sequence[int],
                          weights: Sequence = None) -> tuple:
    """
    构造零和等价博弈 u^(i) = v^(i) + g^(i)(s_{-i})，其中 sum_i v^(i) = 0

    Returns:
        (game, vs)
    """
    sizes = tuple(sizes)
    vs = [rng.uniform(-1.0, 1.0, size=sizes) for _ in range(len(sizes) - 1)]
    vs.append(-sum(vs) if vs else np.zeros(sizes))
    base = new_game(sizes, vs, weights)
    return add_passive(base, random_passives(rng, base.space)), vs
