"""
脚本运行入口：源码 / 文件 / 目录
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Union

from src.core.cli.interpreter import Interpreter
from src.core.cli.parser import parse
from src.core.cli.report import DirectoryReport, Report, ReportFormat
from src.core.errors import ScriptSyntaxError
from src.core.fgl import DEFAULT_CAP
from src.utils.logger import logger


@dataclass(frozen=True)
class RunOptions:
    """
    Attributes:
        format: 报告格式（text / json）
        cap: 级数默认截断次数
    """

    format: str = ReportFormat.TEXT
    cap: int = DEFAULT_CAP


def run_source(text: str, options: RunOptions = RunOptions()) -> Report:
    """解析并执行脚本源码；语法错误记录在报告中"""
    try:
        script = parse(text)
    except ScriptSyntaxError as e:
        logger.debug(f"脚本解析失败: {e}")
        return Report(error=e)
    return Interpreter(options.cap).run(script)


def run_file(path: Union[str, Path], options: RunOptions = RunOptions()) -> Report:
    """
    Raises:
        OSError: 文件无法读取
    """
    path = Path(path)
    logger.info(f"运行脚本: {path}")
    return run_source(path.read_text(encoding="utf-8"), options)


def run_directory(
    directory: Union[str, Path], options: RunOptions = RunOptions(), suffix: str = ".se"
) -> DirectoryReport:
    """按文件名顺序运行目录下所有 *<suffix> 脚本，每个脚本用独立的解释器"""
    directory = Path(directory)
    if not directory.is_dir():
        raise NotADirectoryError(f"不是目录: {directory}")
    result = DirectoryReport()
    for path in sorted(directory.glob(f"*{suffix}")):
        result.add(path.name, run_file(path, options))
    logger.info(
        f"目录 {directory} 共 {len(result.scripts)} 个脚本: "
        f"passed={result.passed} failed={result.failed} errors={result.errors}"
    )
    return result
