# -*- coding: utf-8 -*-
"""
命令行入口

使用:
    python main.py classify data/games/matching_pennies.json
    python main.py classify data/games/matching_pennies.json --format json --assert-potential
    python main.py potential data/games/battle_of_sexes.json --representation
    python main.py zerosum matching-pennies
    python main.py cycle data/games/battle_of_sexes.json
    python main.py smooth --builtin contest --param alpha=0.5 --box 0.1:10,0.1:10
    python main.py smooth --builtin separable-potential --test integral --grid 16
"""

import os
import sys

# 添加项目根目录
PROJECT_DIR = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, PROJECT_DIR)

from src.cli import run_cli


def main():
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
