"""
sqrteuler 命令行入口

子命令：
- run FILE: 运行一个脚本，输出报告
- check DIR: 按文件名顺序运行目录下所有脚本，退出码取最大值
- coeff a_i I: 输出线丛平方根展开式的第 I 个系数

退出码：0 全部校验通过，1 有校验失败，2 解析/求值错误。
报告写到 stdout，日志与诊断信息写到 stderr。

使用方式：
    python main.py run scripts/corpus/01_squared.se --format json
    python main.py check scripts/corpus
    python main.py coeff a_i 3
"""

import argparse
import json
import sys
from typing import List, Optional

from src.core.cli import ExitCode, ReportFormat, RunOptions, run_directory, run_file
from src.core.errors import SqrtEulerError
from src.core.ktheory import sqrt_line_coefficient
from src.utils.config import EngineConfig
from src.utils.logger import get_logger, setup_logger

logger = get_logger()

COEFFICIENT_SERIES = ("a_i",)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=ReportFormat.ALL, default=None, help="报告格式（默认取配置文件）")
    common.add_argument("--cap", type=int, default=None, help="级数默认截断次数")
    common.add_argument("--quiet", action="store_true", help="只输出 WARNING 以上的日志")
    common.add_argument("--config", default=None, help="配置文件路径（默认 config/defaults.json）")

    parser = argparse.ArgumentParser(prog="sqrteuler", description="平方根欧拉类交理论计算")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="运行一个脚本")
    run.add_argument("file", help="脚本文件")

    check = sub.add_parser("check", parents=[common], help="运行目录下所有脚本")
    check.add_argument("directory", help="脚本目录")

    coeff = sub.add_parser("coeff", parents=[common], help="线丛平方根的展开系数")
    coeff.add_argument("series", choices=COEFFICIENT_SERIES, help="系数序列")
    coeff.add_argument("index", type=int, help="下标（从1开始）")
    return parser


def _coefficient(series: str, index: int, fmt: str) -> str:
    value = sqrt_line_coefficient(index)
    if fmt == ReportFormat.JSON:
        data = {"coefficient": series, "index": index, "value": str(value)}
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return f"{series.replace('_i', f'_{index}')} = {value}\n"


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    try:
        config = EngineConfig.load(args.config) if args.config else EngineConfig.get_instance()
        config = config.override(format=args.format, cap=args.cap)
    except (OSError, ValueError) as e:
        print(f"sqrteuler: {e}", file=sys.stderr)
        return ExitCode.ERROR

    setup_logger(level="WARNING" if args.quiet else config.log_level, log_dir=config.log_dir)
    options = RunOptions(format=config.format, cap=config.cap)
    logger.debug(f"配置: {config.to_dict()}")

    try:
        if args.command == "run":
            report = run_file(args.file, options)
            output, code = report.render(options.format), report.exit_code
            if report.error is not None:
                print(f"sqrteuler: {args.file}: {report.error}", file=sys.stderr)
        elif args.command == "check":
            result = run_directory(args.directory, options, config.script_suffix)
            output, code = result.render(options.format), result.exit_code
        else:
            output, code = _coefficient(args.series, args.index, options.format), ExitCode.OK
    except (OSError, SqrtEulerError) as e:
        print(f"sqrteuler: {e}", file=sys.stderr)
        return ExitCode.ERROR

    sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
