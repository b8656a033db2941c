"""
cli 模块

sqrteuler 脚本语言：
- parse: 脚本 → Script 语法树（含静态名字检查）
- Interpreter: 执行语句，生成 Report
- FunctionRegistry: 脚本函数注册表
- run_source / run_file / run_directory: 运行入口
"""

from src.core.cli.script import SIGNATURES, Script, Signature, StatementKind
from src.core.cli.parser import parse, parse_line, tokenize
from src.core.cli.values import ClassValue
from src.core.cli.functions import CallContext, FunctionRegistry
from src.core.cli.report import DirectoryReport, ExitCode, Report, ReportFormat, StatementResult
from src.core.cli.interpreter import Interpreter
from src.core.cli.runner import RunOptions, run_directory, run_file, run_source

__all__ = [
    "SIGNATURES",
    "Script",
    "Signature",
    "StatementKind",
    "parse",
    "parse_line",
    "tokenize",
    "ClassValue",
    "CallContext",
    "FunctionRegistry",
    "DirectoryReport",
    "ExitCode",
    "Report",
    "ReportFormat",
    "StatementResult",
    "Interpreter",
    "RunOptions",
    "run_directory",
    "run_file",
    "run_source",
]
