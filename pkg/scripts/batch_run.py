# -*- coding: utf-8 -*-
"""
批量对照脚本 - 并行比较积分检验与独立对照

功能:
1. 生成随机博弈语料（一半为构造的正例，一半为均匀随机收益）
2. 势博弈: potential_test vs cycle_test
3. 零和等价: zero_sum_equiv_test vs zero_sum_normalize 残差
4. 生成汇总报告并保存 CSV

使用:
    python scripts/batch_run.py [--workers N] [--games N] [--seed S] [--weighted]
"""

import os
import sys
import argparse
import time
from datetime import datetime
from concurrent.futures import ThreadPoolExecutor, as_completed
import multiprocessing

import numpy as np
import pandas as pd

# 添加项目根目录到路径
PROJECT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, PROJECT_DIR)

from config.settings import BATCH_PARAMS, DEFAULT_TOL, RESULTS_DIR
from src.game_model import (
    random_game, random_weights, planted_potential_game, planted_zero_sum_game
)
from src.classifiers import potential_test, cycle_test, zero_sum_equiv_test
from src.extraction import zero_sum_normalize


def make_case(seed: int, kind: str, planted: bool, weighted: bool = False,
              params: dict = None):
    """
    按种子生成一个博弈

    Args:
        seed: 随机种子
        kind: 'potential' 或 'zero_sum'
        planted: 是否构造正例
        weighted: 是否使用随机权重

    Returns:
        FiniteGame
    """
    params = params or BATCH_PARAMS
    rng = np.random.default_rng(seed)
    n = int(rng.choice(params['players']))
    sizes = tuple(int(k) for k in rng.integers(1, params['max_size'] + 1, size=n))
    weights = random_weights(rng, sizes) if weighted else None
    if not planted:
        return random_game(rng, sizes, weights)
    if kind == 'potential':
        return planted_potential_game(rng, sizes, weights)[0]
    return planted_zero_sum_game(rng, sizes, weights)[0]


def compare_potential(game, tol: float = DEFAULT_TOL) -> dict:
    """积分检验与循环条件的结论是否一致"""
    a, b = potential_test(game, tol), cycle_test(game, tol)
    return {'test': a.passed, 'oracle': b.passed,
            'residual': a.residual, 'oracle_residual': b.residual}


def compare_zero_sum(game, tol: float = DEFAULT_TOL) -> dict:
    """零和等价检验与规范化残差的结论是否一致"""
    a = zero_sum_equiv_test(game, tol)
    rep = zero_sum_normalize(game, tol, check=False)
    return {'test': a.passed, 'oracle': rep.residual <= tol,
            'residual': a.residual, 'oracle_residual': rep.residual}


class BatchRunner:
    """批量对照运行器"""

    def __init__(self, workers: int = None, weighted: bool = False, tol: float = DEFAULT_TOL):
        """
        初始化

        Args:
            workers: 并行线程数（默认CPU核心数）
            weighted: 是否使用随机权重
            tol: 检验容差
        """
        self.workers = workers or multiprocessing.cpu_count()
        self.weighted = weighted
        self.tol = tol
        self.results = []

    def process_single_case(self, case: tuple) -> dict:
        """
        处理单个博弈（核心流程）

        Args:
            case: (seed, kind, planted)

        Returns:
            结果字典
        """
        seed, kind, planted = case
        try:
            game = make_case(seed, kind, planted, self.weighted)
            compare = compare_potential if kind == 'potential' else compare_zero_sum
            result = compare(game, self.tol)
            return {
                'seed': seed,
                'kind': kind,
                'planted': planted,
                'n': game.n,
                'sizes': 'x'.join(str(k) for k in game.sizes),
                'status': 'agree' if result['test'] == result['oracle'] else 'disagree',
                **result
            }
        except Exception as e:
            return {'seed': seed, 'kind': kind, 'planted': planted,
                    'status': 'error', 'reason': str(e)[:100]}

    def run(self, n_games: int = None, seed: int = None) -> pd.DataFrame:
        """
        运行批量对照

        Args:
            n_games: 每类检验的博弈数量
            seed: 起始种子

        Returns:
            结果 DataFrame
        """
        n_games = n_games or BATCH_PARAMS['n_games']
        seed = BATCH_PARAMS['seed'] if seed is None else seed
        n_planted = int(round(n_games * BATCH_PARAMS['planted_share']))
        cases = [(seed + k, kind, k < n_planted)
                 for kind in ('potential', 'zero_sum') for k in range(n_games)]
        total = len(cases)

        print("=" * 60)
        print(f"积分检验批量对照 (并行: {self.workers}线程)")
        print(f"博弈数量: {total}")
        print("=" * 60)

        self.results = []
        start = time.time()
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            futures = {executor.submit(self.process_single_case, c): c for c in cases}
            for future in as_completed(futures):
                self.results.append(future.result())
        elapsed = time.time() - start

        df = pd.DataFrame(self.results).sort_values(['kind', 'seed']).reset_index(drop=True)
        self.print_summary(df, elapsed)
        return df

    def print_summary(self, df: pd.DataFrame, elapsed: float):
        """打印汇总报告"""
        print("\n" + "=" * 60)
        print("对照汇总")
        print("=" * 60)
        print(f"用时: {elapsed:.2f} 秒")

        summary = (df.groupby(['kind', 'status']).size()
                   .unstack(fill_value=0).reset_index())
        print(summary.to_string(index=False))

        bad = df[df['status'] != 'agree']
        if len(bad) == 0:
            print("\n所有博弈的检验结论与对照一致")
        else:
            print(f"\n不一致或出错: {len(bad)} 个")
            print(bad.head(10).to_string(index=False))

        os.makedirs(RESULTS_DIR, exist_ok=True)
        timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
        output_file = os.path.join(RESULTS_DIR, f'oracle_results_{timestamp}.csv')
        df.to_csv(output_file, index=False)
        print(f"\n详细结果已保存到: {output_file}")


def main():
    """主函数"""
    parser = argparse.ArgumentParser(description='积分检验批量对照')
    parser.add_argument('--workers', type=int, default=None,
                        help='并行线程数 (默认: CPU核心数)')
    parser.add_argument('--games', type=int, default=None,
                        help='每类检验的博弈数量')
    parser.add_argument('--seed', type=int, default=None,
                        help='起始随机种子')
    parser.add_argument('--weighted', action='store_true',
                        help='使用随机策略权重')

    args = parser.parse_args()

    runner = BatchRunner(workers=args.workers, weighted=args.weighted)
    df = runner.run(args.games, args.seed)
    sys.exit(0 if (df['status'] == 'agree').all() else 1)


if __name__ == "__main__":
    main()
