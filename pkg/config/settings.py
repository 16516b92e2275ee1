# -*- coding: utf-8 -*-
"""
配置文件 - 所有项目参数
"""

import os

# ============== 路径配置 ==============
PROJECT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA_DIR = os.path.join(PROJECT_DIR, 'data')
GAMES_DIR = os.path.join(DATA_DIR, 'games')        # 示例博弈 JSON
GOLDEN_DIR = os.path.join(DATA_DIR, 'golden')      # CLI 基准输出
RESULTS_DIR = os.path.join(DATA_DIR, 'results')    # 批量检验结果
CONFIG_PATH = os.path.join(PROJECT_DIR, 'config.yaml')

# ============== 检验容差 ==============
DEFAULT_TOL = 1e-9            # 有限博弈积分检验 / 循环检验
DERIVATIVE_TOL = 1e-6         # 有限差分导数检验
IDENTITY_RTOL = 1e-12         # 算子恒等式（相对 max|h|）

# ============== 有限差分参数 ==============
DEFAULT_STEP = 1e-4           # 实际步长 = DEFAULT_STEP * (1 + |坐标|)
DEFAULT_POINTS_PER_AXIS = 5   # 导数检验默认每轴取点数
STENCIL_MARGIN = 2.0          # 取点区域向内收缩的步长倍数

# ============== 网格采样参数 ==============
DEFAULT_GRID_POINTS = 16
DEFAULT_SCHEME = 'midpoint'
GRID_SCHEMES = ('midpoint', 'gauss-legendre')

# ============== 输出参数 ==============
JSON_INDENT = 2
FLOAT_FORMAT = '{:.6e}'       # 文本报告中的浮点格式

# ============== 批量检验参数 ==============
BATCH_PARAMS = {
    'n_games': 1000,          # 随机博弈数量
    'planted_share': 0.5,     # 构造正例的比例
    'players': (2, 3),        # 玩家数取值
    'max_size': 4,            # 每个玩家最多策略数
    'seed': 42
}

# ============== 内置连续博弈 ==============
BUILTIN_DEFAULTS = {
    'contest': {
        'params': {'alpha': 0.5, 'v': 1.0, 'c1': 1.0, 'c2': 1.0},
        'box': ((0.1, 10.0), (0.1, 10.0))
    },
    'cournot': {
        'params': {'a': 10.0},
        'box': ((0.0, 5.0), (0.0, 5.0))
    },
    'bilinear-zero-sum': {
        'params': {'scale': 1.0},
        'box': ((0.0, 1.0), (0.0, 1.0))
    },
    'bilinear-common': {
        'params': {'scale': 1.0},
        'box': ((0.0, 1.0), (0.0, 1.0))
    },
    'separable-potential': {
        'params': {},
        'box': ((0.0, 1.0), (0.0, 1.0))
    },
}
