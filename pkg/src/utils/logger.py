"""
日志配置模块

使用 loguru 实现统一的日志管理，包含：
- 自定义日志格式：时间 | 等级 | 模块名:行号 | 信息
- 控制台输出走 stderr，stdout 只留给报告，保证输出逐字节可复现
- 可选的文件输出（按时间轮转，保存3天）
"""

import sys
from pathlib import Path
from typing import Optional

from loguru import logger

# 文件日志格式（不带颜色标签）
FILE_FORMAT = (
    "{time:YY/MM/DD HH:mm:ss} | "
    "{level} | "
    "{extra[module_name]}:{line} | "
    "{message}"
)

CONSOLE_FORMAT = (
    "<green>{time:YY/MM/DD HH:mm:ss}</green> | "
    "<level>{level}</level> | "
    "<cyan>{extra[module_name]}</cyan>:<cyan>{line}</cyan> | "
    "<level>{message}</level>"
)

VALID_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


def add_module_name(record):
    """
    添加模块名到日志记录中

    从完整的模块路径中提取文件名作为模块名
    例如：src.core.chow.blowup -> blowup
    例如：__main__ -> main
    """
    parts = record["name"].split(".")
    module_name = parts[-1]

    if module_name == "__main__":
        module_name = "main"

    record["extra"]["module_name"] = module_name
    return True


def setup_logger(
    level: str = "INFO",
    log_dir: Optional[str] = None,
    log_file: str = "sqrteuler.log",
) -> None:
    """
    配置全局日志系统

    Args:
        level: 控制台日志等级，默认 INFO；--quiet 时传入 WARNING
        log_dir: 日志文件目录，为 None 时不写文件
        log_file: 日志文件名，默认为 "sqrteuler.log"

    Raises:
        ValueError: 日志等级无效
    """
    level = level.upper()
    if level not in VALID_LEVELS:
        raise ValueError(f"无效的日志等级: {level}")

    logger.remove()

    logger.add(
        sys.stderr,
        format=CONSOLE_FORMAT,
        level=level,
        colorize=False,
        backtrace=False,
        diagnose=False,
        filter=add_module_name,
    )

    if log_dir is not None:
        log_path = Path(log_dir)
        log_path.mkdir(parents=True, exist_ok=True)

        logger.add(
            log_path / log_file,
            format=FILE_FORMAT,
            level="DEBUG",
            rotation="00:00",      # 每天午夜轮转
            retention="3 days",    # 保留3天的日志
            compression="zip",
            encoding="utf-8",
            backtrace=True,
            diagnose=False,
            filter=add_module_name,
        )

    logger.debug(f"日志系统初始化完成: level={level} log_dir={log_dir}")


def get_logger():
    """
    获取 logger 实例

    使用方式：
        from src.utils.logger import get_logger
        logger = get_logger()
        logger.info("这是一条信息日志")
    """
    return logger


# 模块导入时以默认配置初始化，CLI 启动后会按参数重新配置
setup_logger(level="WARNING")
