# -*- coding: utf-8 -*-
"""
配置模块初始化
"""

from .settings import (
    PROJECT_DIR, DATA_DIR, GAMES_DIR, GOLDEN_DIR, RESULTS_DIR, CONFIG_PATH,
    DEFAULT_TOL, DERIVATIVE_TOL, IDENTITY_RTOL,
    DEFAULT_STEP, DEFAULT_POINTS_PER_AXIS, STENCIL_MARGIN,
    DEFAULT_GRID_POINTS, DEFAULT_SCHEME, GRID_SCHEMES,
    JSON_INDENT, FLOAT_FORMAT,
    BATCH_PARAMS, BUILTIN_DEFAULTS
)

__all__ = [
    'PROJECT_DIR', 'DATA_DIR', 'GAMES_DIR', 'GOLDEN_DIR', 'RESULTS_DIR', 'CONFIG_PATH',
    'DEFAULT_TOL', 'DERIVATIVE_TOL', 'IDENTITY_RTOL',
    'DEFAULT_STEP', 'DEFAULT_POINTS_PER_AXIS', 'STENCIL_MARGIN',
    'DEFAULT_GRID_POINTS', 'DEFAULT_SCHEME', 'GRID_SCHEMES',
    'JSON_INDENT', 'FLOAT_FORMAT',
    'BATCH_PARAMS', 'BUILTIN_DEFAULTS'
]
