"""
引擎配置加载

从 config/defaults.json 读取引擎默认值（截断次数、输出格式、日志等级等），
命令行参数在此基础上覆盖。不读取任何环境变量。

使用方式：
    from src.utils.config import EngineConfig

    config = EngineConfig.get_instance()
    cap = config.cap

    # 命令行覆盖
    config = config.override(cap=10, format="json")
"""

import json
from dataclasses import dataclass, replace, asdict
from pathlib import Path
from typing import Any, Dict, Optional

from src.utils.logger import logger

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "defaults.json"

VALID_FORMATS = ("text", "json")


@dataclass(frozen=True)
class EngineConfig:
    """
    引擎配置（单例）

    Attributes:
        cap: 默认截断次数（形式幂级数、K 理论幂零截断）
        format: 报告格式 text/json
        log_level: 控制台日志等级
        log_dir: 日志文件目录，None 表示不写文件
        script_suffix: check 命令扫描的脚本后缀
    """

    cap: int = 8
    format: str = "text"
    log_level: str = "INFO"
    log_dir: Optional[str] = None
    script_suffix: str = ".se"

    _instance = None  # 单例实例（类属性，不是字段）

    def __post_init__(self):
        if not isinstance(self.cap, int) or isinstance(self.cap, bool) or self.cap < 0:
            raise ValueError(f"cap 必须是非负整数: {self.cap!r}")
        if self.format not in VALID_FORMATS:
            raise ValueError(f"format 必须是 {VALID_FORMATS} 之一: {self.format!r}")
        if not isinstance(self.log_level, str) or not self.log_level:
            raise ValueError(f"log_level 必须是非空字符串: {self.log_level!r}")
        if self.log_dir is not None and not isinstance(self.log_dir, str):
            raise ValueError(f"log_dir 必须是字符串或 null: {self.log_dir!r}")
        if not isinstance(self.script_suffix, str) or not self.script_suffix.startswith("."):
            raise ValueError(f"script_suffix 必须以 '.' 开头: {self.script_suffix!r}")

    @classmethod
    def load(cls, config_path: Optional[str] = None) -> "EngineConfig":
        """
        从 JSON 文件加载配置

        Args:
            config_path: 配置文件路径，默认 config/defaults.json

        Raises:
            FileNotFoundError: 配置文件不存在
            ValueError: JSON 格式错误或字段无效
        """
        path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
        if not path.exists():
            error_msg = f"配置文件不存在: {path}"
            logger.error(error_msg)
            raise FileNotFoundError(error_msg)

        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            error_msg = f"配置文件JSON格式错误: {e}"
            logger.error(error_msg)
            raise ValueError(error_msg)

        if not isinstance(data, dict):
            raise ValueError("配置文件顶层必须是对象")

        known = {"cap", "format", "log_level", "log_dir", "script_suffix"}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"配置文件包含未知字段: {sorted(unknown)}")

        config = cls(**data)
        logger.debug(f"配置加载完成: {path} -> {config.to_dict()}")
        return config

    @classmethod
    def get_instance(cls, config_path: Optional[str] = None) -> "EngineConfig":
        """获取配置单例，首次调用时从文件加载"""
        if EngineConfig._instance is None:
            EngineConfig._instance = cls.load(config_path)
        return EngineConfig._instance

    @classmethod
    def reset_instance(cls) -> None:
        """
        重置单例实例（仅用于测试）
        """
        EngineConfig._instance = None

    def override(self, **changes: Any) -> "EngineConfig":
        """用非 None 的命令行参数覆盖配置，返回新实例"""
        effective = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **effective)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
