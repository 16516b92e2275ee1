# -*- coding: utf-8 -*-
"""
命令行模块 - 读取博弈、运行检验、输出报告或分解

子命令:
    classify  积分检验汇总报告
    potential 提取势函数（--representation 输出表示形式）
    zerosum   零和规范化（--representation 输出表示形式）
    cycle     循环条件穷举检验
    smooth    内置连续博弈的导数检验或网格积分检验

退出码:
    0 运行成功（检验结果写在输出中）
    1 --assert-* 对应的检验未通过，或博弈不满足 potential / zerosum 的前提
    2 输入或用法错误
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from config.settings import (
    DEFAULT_TOL, DERIVATIVE_TOL, DEFAULT_STEP, DEFAULT_GRID_POINTS, DEFAULT_SCHEME,
    GRID_SCHEMES, FLOAT_FORMAT
)
from src.classifiers import TestVerdict, classify, cycle_test
from src.exceptions import (
    GameError, InvalidParameter, NotAPotentialGame, NotZeroSumEquivalent
)
from src.extraction import (
    extract_potential, potential_representation, zero_sum_normalize, zero_sum_representation
)
from src.game_model import FiniteGame, parse_game_json, matching_pennies, battle_of_sexes
from src.smooth_games import (
    BUILTINS, GridSpec, build_builtin, derivative_potential_test, derivative_zero_sum_test,
    sample_game
)
from utils import load_config, dump_json, save_results

logger = logging.getLogger(__name__)

SUBCOMMANDS = ('classify', 'potential', 'zerosum', 'cycle', 'smooth')

FINITE_BUILTINS = {
    'matching-pennies': matching_pennies,
    'battle-of-sexes': battle_of_sexes,
}

BANNER = "=" * 60


class UsageError(GameError):
    """命令行用法错误"""


# ============ 参数解析 ============
def build_parser() -> argparse.ArgumentParser:
    """构建命令行解析器"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--tol', type=float, default=None,
                        help='检验容差 (默认: 有限博弈 1e-9 / 导数检验 1e-6)')
    common.add_argument('--format', choices=('text', 'json'), default='text',
                        help='输出格式 (默认: text)')
    common.add_argument('--out', type=str, default=None,
                        help='输出文件路径 (默认: 标准输出)')
    common.add_argument('--config', type=str, default=None,
                        help='YAML 配置文件')
    common.add_argument('--verbose', action='store_true',
                        help='在标准错误输出调试日志')

    asserts = argparse.ArgumentParser(add_help=False)
    asserts.add_argument('--assert-potential', action='store_true',
                         help='势博弈检验未通过时退出码为 1')
    asserts.add_argument('--assert-zerosum', action='store_true',
                         help='零和等价检验未通过时退出码为 1')

    parser = argparse.ArgumentParser(prog='potential-games',
                                     description='势博弈与零和等价博弈检验')
    sub = parser.add_subparsers(dest='subcommand', required=True)

    p = sub.add_parser('classify', parents=[common, asserts], help='积分检验汇总报告')
    p.add_argument('input', help='博弈 JSON 文件或内置名称')

    for name, text in (('potential', '提取势函数'), ('zerosum', '零和规范化')):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument('input', help='博弈 JSON 文件或内置名称')
        p.add_argument('--representation', action='store_true',
                       help='输出表示形式而不是分解')

    p = sub.add_parser('cycle', parents=[common, asserts], help='循环条件穷举检验')
    p.add_argument('input', help='博弈 JSON 文件或内置名称')

    p = sub.add_parser('smooth', parents=[common, asserts], help='内置连续博弈检验')
    p.add_argument('--builtin', required=True, choices=sorted(BUILTINS),
                   help='内置博弈名称')
    p.add_argument('--param', action='append', default=[], metavar='K=V',
                   help='数值参数，可重复')
    p.add_argument('--box', type=str, default=None, metavar='LO:HI[,LO:HI...]',
                   help='策略区间')
    p.add_argument('--grid', type=int, default=None, help='网格每轴节点数')
    p.add_argument('--scheme', choices=GRID_SCHEMES, default=None, help='网格方案')
    p.add_argument('--step', type=float, default=None, help='差分基准步长')
    p.add_argument('--test', choices=('derivative', 'integral'), default='derivative',
                   help='检验方式 (默认: derivative)')
    return parser


def parse_params(items: Sequence[str]) -> dict:
    """解析 K=V 列表"""
    params = {}
    for item in items:
        key, sep, value = item.partition('=')
        if not sep or not key:
            raise InvalidParameter(f"参数格式应为 K=V: {item}")
        try:
            params[key.strip()] = float(value)
        except ValueError as e:
            raise InvalidParameter(f"参数 {key} 不是数值: {value}") from e
    return params


def parse_box(text: Optional[str]) -> Optional[tuple]:
    """解析 'lo:hi,lo:hi'"""
    if text is None:
        return None
    box = []
    for part in text.split(','):
        lo, sep, hi = part.partition(':')
        try:
            if not sep:
                raise ValueError(part)
            box.append((float(lo), float(hi)))
        except ValueError as e:
            raise InvalidParameter(f"区间格式应为 lo:hi: {part}") from e
    return tuple(box)


def load_game(source: str) -> FiniteGame:
    """从文件或内置名称读取博弈"""
    if os.path.exists(source):
        with open(source, 'rb') as f:
            return parse_game_json(f.read())
    if source in FINITE_BUILTINS:
        return FINITE_BUILTINS[source]()
    raise FileNotFoundError(f"找不到博弈文件: {source}")


CONFIG_TYPES = {
    'tol': float,
    'derivative_tol': float,
    'step': float,
    'grid': int,
    'scheme': str,
}


def _config_value(key: str, value):
    """按键的类型转换配置值，无法转换时报用法错误"""
    kind = CONFIG_TYPES[key]
    if value is None or isinstance(value, (bool, list, dict)):
        raise UsageError(f"配置项 {key} 的值无效: {value!r}")
    if kind is str:
        if not isinstance(value, str):
            raise UsageError(f"配置项 {key} 必须是字符串: {value!r}")
        return value
    try:
        number = float(value)
    except (TypeError, ValueError) as e:
        raise UsageError(f"配置项 {key} 不是数值: {value!r}") from e
    if kind is int:
        if not number.is_integer():
            raise UsageError(f"配置项 {key} 必须是整数: {value!r}")
        return int(number)
    return number


def resolve_settings(args) -> dict:
    """默认值 < 配置文件 < 命令行"""
    settings = {
        'tol': DEFAULT_TOL,
        'derivative_tol': DERIVATIVE_TOL,
        'step': DEFAULT_STEP,
        'grid': DEFAULT_GRID_POINTS,
        'scheme': DEFAULT_SCHEME,
    }
    if args.config:
        for key, value in load_config(args.config).items():
            if key not in settings:
                raise UsageError(f"配置文件中的未知键: {key}")
            settings[key] = _config_value(key, value)
    for key in ('step', 'grid', 'scheme'):
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    if args.tol is not None:
        settings['tol'] = settings['derivative_tol'] = args.tol
    return settings


# ============ 文本输出 ============
def _fmt(x: float) -> str:
    return FLOAT_FORMAT.format(x)


def verdict_table(verdicts: Sequence[TestVerdict]) -> str:
    rows = [{
        '检验': v.test,
        '结果': '通过' if v.passed else '未通过',
        '残差': _fmt(v.residual),
        '容差': _fmt(v.tolerance),
        '比较次数': v.operations,
    } for v in verdicts]
    return pd.DataFrame(rows).to_string(index=False)


def _header(title: str) -> list:
    return [BANNER, title, BANNER]


def _tensor_text(t: np.ndarray) -> str:
    return np.array2string(np.asarray(t), precision=6, floatmode='maxprec', separator=', ')


def render_report(report, extra: Sequence[str] = ()) -> str:
    lines = _header("博弈分类报告")
    lines += list(extra)
    lines += [f"玩家数: {report.n_players}", f"策略数: {list(report.sizes)}", ""]
    lines.append(verdict_table([report.potential, report.zero_sum_equivalent]))
    lines.append("")
    lines.append(f"精确零和: {'是' if report.exact_zero_sum else '否'}")
    lines.append(f"共同利益: {'是' if report.common_interest else '否'}")
    return "\n".join(lines) + "\n"


def render_verdicts(title: str, verdicts: Sequence[TestVerdict], extra: Sequence[str] = ()) -> str:
    lines = _header(title) + list(extra)
    lines.append(verdict_table(verdicts))
    notes = sorted({v.note for v in verdicts if v.note})
    for note in notes:
        lines.append(f"注: {note}")
    return "\n".join(lines) + "\n"


def render_passives(passives) -> list:
    lines = []
    for g in passives:
        lines.append(f"g^({g.player + 1}) (第 {g.player + 1} 轴已压缩):")
        lines.append(_tensor_text(g.table))
    return lines


def render_decomposition(result) -> str:
    if hasattr(result, 'v'):
        lines = _header("势函数分解") + ["v:", _tensor_text(result.v)]
    else:
        lines = _header("零和规范化")
        for i, v in enumerate(result.vs):
            lines += [f"v^({i + 1}):", _tensor_text(v)]
    lines += render_passives(result.passives)
    lines.append(f"残差: {_fmt(result.residual)}")
    return "\n".join(lines) + "\n"


def render_representation(rep) -> str:
    if rep.kind == 'potential':
        lines = _header("势博弈表示 u^(i) = w + sum_{l!=i} g^(l)") + ["w:", _tensor_text(rep.w)]
    else:
        lines = _header("零和等价表示 u^(i) = w^(i) + sum_{l!=i} g^(l)")
        for i, w in enumerate(rep.ws):
            lines += [f"w^({i + 1}):", _tensor_text(w)]
        lines.append(f"c: {_fmt(rep.constant)}")
    lines += render_passives(rep.passives)
    lines.append(f"残差: {_fmt(rep.residual)}")
    return "\n".join(lines) + "\n"


# ============ 子命令 ============
def _check_asserts(args, potential: Optional[TestVerdict], zero_sum: Optional[TestVerdict]) -> int:
    failed = []
    if getattr(args, 'assert_potential', False):
        if potential is None:
            raise UsageError("该子命令不支持 --assert-potential")
        if not potential.passed:
            failed.append('potential')
    if getattr(args, 'assert_zerosum', False):
        if zero_sum is None:
            raise UsageError("该子命令不支持 --assert-zerosum")
        if not zero_sum.passed:
            failed.append('zerosum')
    for name in failed:
        print(f"断言失败: {name}", file=sys.stderr)
    return 1 if failed else 0


def cmd_classify(args, settings: dict) -> tuple:
    game = load_game(args.input)
    report = classify(game, settings['tol'])
    text = dump_json(report.to_dict()) if args.format == 'json' else render_report(report)
    return text, _check_asserts(args, report.potential, report.zero_sum_equivalent)


def cmd_cycle(args, settings: dict) -> tuple:
    game = load_game(args.input)
    verdict = cycle_test(game, settings['tol'])
    if args.format == 'json':
        text = dump_json(verdict.to_dict())
    else:
        text = render_verdicts("循环条件检验", [verdict])
    return text, _check_asserts(args, verdict, None)


def cmd_potential(args, settings: dict) -> tuple:
    game = load_game(args.input)
    if args.representation:
        result = potential_representation(game, settings['tol'])
        render = render_representation
    else:
        result = extract_potential(game, settings['tol'])
        render = render_decomposition
    text = dump_json(result.to_dict()) if args.format == 'json' else render(result)
    return text, 0


def cmd_zerosum(args, settings: dict) -> tuple:
    game = load_game(args.input)
    if args.representation:
        result = zero_sum_representation(game, settings['tol'])
        render = render_representation
    else:
        result = zero_sum_normalize(game, settings['tol'])
        render = render_decomposition
    text = dump_json(result.to_dict()) if args.format == 'json' else render(result)
    return text, 0


def cmd_smooth(args, settings: dict) -> tuple:
    game = build_builtin(args.builtin, parse_params(args.param), parse_box(args.box))
    box = [list(b) for b in game.box]
    if args.test == 'derivative':
        tol, step = settings['derivative_tol'], settings['step']
        pot = derivative_potential_test(game, h=step, tol=tol)
        zs = derivative_zero_sum_test(game, h=step, tol=tol)
        if args.format == 'json':
            text = dump_json({'game': args.builtin, 'test': 'derivative', 'box': box,
                              'step': step, 'potential': pot.to_dict(),
                              'zero_sum_equivalent': zs.to_dict()})
        else:
            text = render_verdicts(f"导数检验: {args.builtin}", [pot, zs],
                                   [f"区间: {box}", f"步长: {_fmt(step)}", ""])
        return text, _check_asserts(args, pot, zs)

    spec = GridSpec.uniform(game.n, int(settings['grid']), settings['scheme'])
    report = classify(sample_game(game, spec), settings['tol'])
    if args.format == 'json':
        text = dump_json({'game': args.builtin, 'test': 'integral', 'box': box,
                          'grid': list(spec.points_per_axis), 'scheme': spec.scheme,
                          'report': report.to_dict()})
    else:
        text = render_report(report, [f"内置博弈: {args.builtin}", f"区间: {box}",
                                      f"网格: {list(spec.points_per_axis)} ({spec.scheme})"])
    return text, _check_asserts(args, report.potential, report.zero_sum_equivalent)


COMMANDS = {
    'classify': cmd_classify,
    'potential': cmd_potential,
    'zerosum': cmd_zerosum,
    'cycle': cmd_cycle,
    'smooth': cmd_smooth,
}


def run_cli(argv: Sequence[str] = None) -> int:
    """
    命令行入口

    Args:
        argv: 参数列表（默认 sys.argv[1:]）

    Returns:
        退出码
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr,
                            format='%(levelname)s %(name)s: %(message)s')

    try:
        settings = resolve_settings(args)
        logger.debug("子命令 %s: %s", args.subcommand, settings)
        text, code = COMMANDS[args.subcommand](args, settings)
        if args.out:
            save_results(text, args.out)
    except (NotAPotentialGame, NotZeroSumEquivalent) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except (GameError, OSError, ValueError) as e:
        print(f"错误: {e}", file=sys.stderr)
        return 2

    if not args.out:
        sys.stdout.write(text)
    return code
