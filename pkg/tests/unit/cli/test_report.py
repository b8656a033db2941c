"""
运行报告单元测试

测试内容：
- 单条结果的文本与字典形式
- 退出码优先级
- JSON 输出的确定性
- 目录报告的汇总
"""

import json

import pytest

from src.core.chow import Verdict
from src.core.cli import DirectoryReport, ExitCode, Report, ReportFormat, StatementResult
from src.core.errors import ScriptEvaluationError, ScriptSyntaxError


def _passed(line: int = 1) -> StatementResult:
    return StatementResult(line, "check", "check H == H", verdict=Verdict.PASS, lhs="H", rhs="H")


def _failed(line: int = 2) -> StatementResult:
    return StatementResult(line, "check", "check H == 2H", verdict=Verdict.FAIL, lhs="H", rhs="2*H")


class TestStatementResult:
    """单条结果测试"""

    def test_print_text(self):
        """测试 print 结果的文本"""
        result = StatementResult(3, "print", "print sqrt_euler(F)", result="2*H^2")
        assert result.to_text() == "line 3: print sqrt_euler(F) -> 2*H^2"
        assert not result.is_check

    def test_check_text(self):
        """测试 check 结果的文本"""
        assert _passed().to_text() == "line 1: check H == H -> pass: H == H"
        assert _failed().to_text() == "line 2: check H == 2H -> fail: H != 2*H"

    def test_dict_drops_none(self):
        """测试字典形式省略空字段"""
        result = StatementResult(3, "integrate", "integrate H^2 on P(2)", result="1")
        assert result.to_dict() == {
            "line": 3,
            "kind": "integrate",
            "source": "integrate H^2 on P(2)",
            "result": "1",
        }


class TestReport:
    """单个脚本报告测试"""

    def test_counts(self):
        """测试通过与失败计数"""
        report = Report([_passed(), _failed(), StatementResult(3, "print", "print 1", result="1")])
        assert report.passed == 1
        assert report.failed == 1

    @pytest.mark.parametrize(
        "statements, error, expected",
        [
            ([], None, ExitCode.OK),
            ([_passed()], None, ExitCode.OK),
            ([_passed(), _failed()], None, ExitCode.CHECK_FAILED),
            ([_failed()], ScriptEvaluationError("除数为0", 3), ExitCode.ERROR),
        ],
    )
    def test_exit_code(self, statements, error, expected):
        """测试退出码：错误优先于校验失败"""
        assert Report(list(statements), error).exit_code == expected

    def test_error_dict(self):
        """测试错误字段（有列号时带 column）"""
        report = Report(error=ScriptSyntaxError("未声明的名字 Y", 1, 7))
        assert report.to_dict()["error"] == {"line": 1, "message": "未声明的名字 Y", "column": 7}
        report = Report(error=ScriptEvaluationError("除数为0", 2))
        assert report.to_dict()["error"] == {"line": 2, "message": "除数为0"}

    def test_json_is_sorted_and_stable(self):
        """测试 JSON 输出按键排序、末尾换行、重复渲染一致"""
        report = Report([_passed(), _failed()], ScriptEvaluationError("除数为0", 3))
        text = report.render(ReportFormat.JSON)
        assert text.endswith("}\n")
        assert text == report.to_json()
        assert text.index('"error"') < text.index('"statements"') < text.index('"summary"')
        assert json.loads(text)["summary"] == {"passed": 1, "failed": 1}

    def test_text(self):
        """测试文本格式的错误行与汇总行"""
        report = Report([_passed()], ScriptEvaluationError("除数为0", 3))
        assert report.render() == (
            "line 1: check H == H -> pass: H == H\n"
            "error: line 3: 除数为0\n"
            "summary: passed=1 failed=0\n"
        )

    def test_empty_text(self):
        """测试空报告只有汇总行"""
        assert Report().to_text() == "summary: passed=0 failed=0\n"


class TestDirectoryReport:
    """目录报告测试"""

    @pytest.fixture
    def directory(self):
        result = DirectoryReport()
        result.add("a.se", Report([_passed()]))
        result.add("b.se", Report([_failed()]))
        result.add("c.se", Report(error=ScriptSyntaxError("x", 1)))
        return result

    def test_totals(self, directory):
        """测试汇总与最大退出码"""
        assert (directory.passed, directory.failed, directory.errors) == (1, 1, 1)
        assert directory.exit_code == ExitCode.ERROR

    def test_empty_directory(self):
        """测试空目录退出码为0"""
        assert DirectoryReport().exit_code == ExitCode.OK

    def test_text(self, directory):
        """测试文本格式的分节"""
        text = directory.render(ReportFormat.TEXT)
        assert text.startswith("== a.se (exit 0) ==\nline 1: check H == H -> pass: H == H\n")
        assert "== b.se (exit 1) ==\n" in text
        assert "== c.se (exit 2) ==\n" in text
        assert text.endswith("total: passed=1 failed=1 errors=1\n")

    def test_json(self, directory):
        """测试 JSON 格式"""
        data = json.loads(directory.render(ReportFormat.JSON))
        assert [s["file"] for s in data["scripts"]] == ["a.se", "b.se", "c.se"]
        assert [s["exit_code"] for s in data["scripts"]] == [0, 1, 2]
        assert data["summary"] == {"passed": 1, "failed": 1, "errors": 1}
