# -*- coding: utf-8 -*-
"""
异常定义 - 所有领域错误的基类为 GameError (ValueError 子类)
"""


class GameError(ValueError):
    """博弈工具包错误基类"""


# ============ 数据模型 ============
class ShapeMismatch(GameError):
    """张量形状与策略空间不符，或张量数量错误"""


class NonPositiveWeight(GameError):
    """策略权重非正或非有限"""


class NonFiniteEntry(GameError):
    """收益中出现 NaN / inf"""


class IndexOutOfRange(GameError, IndexError):
    """玩家或策略下标越界"""


class DuplicateAxis(GameError):
    """算子乘积中轴重复"""


class MalformedJson(GameError):
    """输入不是合法的 UTF-8 JSON"""


class SchemaViolation(GameError):
    """JSON 结构不符合博弈格式"""


# ============ 检验 ============
class InvalidTolerance(GameError):
    """容差必须为正的有限数"""


class WrongPlayerCount(GameError):
    """玩家数不满足检验要求"""


class NonUniformWeights(GameError):
    """该检验要求计数测度"""


class NotAPotentialGame(GameError):
    """博弈不是势博弈"""


class NotZeroSumEquivalent(GameError):
    """博弈不与零和博弈策略等价"""


# ============ 连续博弈 ============
class InvalidStep(GameError):
    """差分步长必须为正"""


class StencilOutOfBox(GameError):
    """差分模板超出策略区间"""


class BoxNotPositive(GameError):
    """区间必须严格位于 (0, ∞) 内"""


class InvalidParameter(GameError):
    """参数取值非法"""


class UnknownBuiltin(GameError):
    """未知的内置博弈名称"""
