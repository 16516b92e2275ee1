# 工具函数模块
import json
import os

import yaml

from config.settings import CONFIG_PATH, JSON_INDENT


def load_config(config_path=CONFIG_PATH):
    """
    加载配置文件

    Parameters:
        config_path: 配置文件路径

    Returns:
        dict: 配置参数
    """
    if not os.path.exists(config_path):
        raise FileNotFoundError(f"配置文件 {config_path} 不存在")

    with open(config_path, 'r', encoding='utf-8') as f:
        try:
            config = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ValueError(f"配置文件 {config_path} 解析失败: {e}") from e

    if config is None:
        return {}
    if not isinstance(config, dict):
        raise ValueError(f"配置文件 {config_path} 顶层必须是键值对")
    return config


def dump_json(payload):
    """
    按固定格式输出 JSON 文本（相同输入得到相同字节）

    Parameters:
        payload: 可 JSON 序列化的数据

    Returns:
        str: 以换行结尾的 JSON 文本
    """
    return json.dumps(payload, ensure_ascii=False, indent=JSON_INDENT, allow_nan=False) + '\n'


def save_results(text, filename):
    """
    保存结果到文件（先写临时文件再替换，失败时不留下半成品）

    Parameters:
        text: 输出文本
        filename: 保存的文件名
    """
    directory = os.path.dirname(os.path.abspath(filename))
    os.makedirs(directory, exist_ok=True)
    tmp = filename + '.tmp'
    try:
        with open(tmp, 'w', encoding='utf-8') as f:
            f.write(text)
        os.replace(tmp, filename)
    except OSError:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
