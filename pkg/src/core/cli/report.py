"""
运行报告

文本格式每条指令一行：
    line 3: check sqrt_euler(F)^2 == euler(F) -> pass: 4*H^4 == 4*H^4
出错时追加 "error: ..." 行，最后是 "summary: passed=P failed=F"。

JSON 格式按键排序、缩进2、末尾换行，同一输入逐字节一致。
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from src.core.chow import Verdict
from src.core.errors import ScriptError


class ExitCode:
    """进程退出码"""

    OK = 0
    CHECK_FAILED = 1
    ERROR = 2


class ReportFormat:
    TEXT = "text"
    JSON = "json"

    ALL = (TEXT, JSON)


def _dump(data: Dict[str, Any]) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@dataclass(frozen=True)
class StatementResult:
    """
    一条指令的结果

    print / integrate 填 result；check 填 verdict、lhs、rhs。
    """

    line: int
    kind: str
    source: str
    result: Optional[str] = None
    verdict: Optional[str] = None
    lhs: Optional[str] = None
    rhs: Optional[str] = None

    @property
    def is_check(self) -> bool:
        return self.verdict is not None

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "line": self.line,
            "kind": self.kind,
            "source": self.source,
            "result": self.result,
            "verdict": self.verdict,
            "lhs": self.lhs,
            "rhs": self.rhs,
        }
        return {k: v for k, v in data.items() if v is not None}

    def to_text(self) -> str:
        head = f"line {self.line}: {self.source} -> "
        if not self.is_check:
            return head + str(self.result)
        relation = "==" if self.passed else "!="
        return head + f"{self.verdict}: {self.lhs} {relation} {self.rhs}"


@dataclass
class Report:
    """
    一个脚本的运行报告

    Attributes:
        statements: 已执行指令的结果（按行号）
        error: 第一个错误（之后的语句不再执行）
    """

    statements: List[StatementResult] = field(default_factory=list)
    error: Optional[ScriptError] = None

    def add(self, result: StatementResult) -> None:
        self.statements.append(result)

    @property
    def passed(self) -> int:
        return sum(1 for s in self.statements if s.is_check and s.passed)

    @property
    def failed(self) -> int:
        return sum(1 for s in self.statements if s.is_check and not s.passed)

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return ExitCode.ERROR
        if self.failed:
            return ExitCode.CHECK_FAILED
        return ExitCode.OK

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "statements": [s.to_dict() for s in self.statements],
            "summary": {"passed": self.passed, "failed": self.failed},
        }
        if self.error is not None:
            error = {"line": self.error.line, "message": self.error.detail}
            if self.error.column is not None:
                error["column"] = self.error.column
            data["error"] = error
        return data

    def to_json(self) -> str:
        return _dump(self.to_dict())

    def to_text(self) -> str:
        lines = [s.to_text() for s in self.statements]
        if self.error is not None:
            lines.append(f"error: {self.error}")
        lines.append(f"summary: passed={self.passed} failed={self.failed}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str = ReportFormat.TEXT) -> str:
        return self.to_json() if fmt == ReportFormat.JSON else self.to_text()


@dataclass
class DirectoryReport:
    """check 子命令：目录下每个脚本一份报告"""

    scripts: List[Any] = field(default_factory=list)  # [(文件名, Report)]

    def add(self, file: str, report: Report) -> None:
        self.scripts.append((file, report))

    @property
    def passed(self) -> int:
        return sum(r.passed for _, r in self.scripts)

    @property
    def failed(self) -> int:
        return sum(r.failed for _, r in self.scripts)

    @property
    def errors(self) -> int:
        return sum(1 for _, r in self.scripts if r.error is not None)

    @property
    def exit_code(self) -> int:
        return max((r.exit_code for _, r in self.scripts), default=ExitCode.OK)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scripts": [
                {"file": file, "exit_code": r.exit_code, "report": r.to_dict()}
                for file, r in self.scripts
            ],
            "summary": {"passed": self.passed, "failed": self.failed, "errors": self.errors},
        }

    def to_text(self) -> str:
        parts = [f"== {file} (exit {r.exit_code}) ==\n{r.to_text()}" for file, r in self.scripts]
        parts.append(f"total: passed={self.passed} failed={self.failed} errors={self.errors}\n")
        return "".join(parts)

    def render(self, fmt: str = ReportFormat.TEXT) -> str:
        return _dump(self.to_dict()) if fmt == ReportFormat.JSON else self.to_text()
