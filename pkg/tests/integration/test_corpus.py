"""
脚本语料集成测试

按文件名顺序运行 scripts/corpus 下的全部脚本，包括：
- 每个脚本都没有错误、没有失败的校验
- JSON 报告符合 docs/report.schema.json
- 同一输入两次运行的 JSON 报告逐字节一致
"""

import json
from pathlib import Path

import jsonschema
import pytest

from src.core.cli import ExitCode, ReportFormat, RunOptions, run_directory, run_file

ROOT = Path(__file__).resolve().parents[2]
CORPUS = ROOT / "scripts" / "corpus"
SCHEMA = json.loads((ROOT / "docs" / "report.schema.json").read_text(encoding="utf-8"))

SCRIPTS = sorted(p.name for p in CORPUS.glob("*.se"))


@pytest.fixture(scope="module")
def corpus_report():
    return run_directory(CORPUS, RunOptions(format=ReportFormat.JSON))


class TestCorpus:
    """语料脚本测试"""

    def test_corpus_not_empty(self):
        """测试语料目录非空"""
        assert len(SCRIPTS) >= 10

    @pytest.mark.parametrize("name", SCRIPTS)
    def test_script_passes(self, name):
        """测试单个脚本全部校验通过"""
        report = run_file(CORPUS / name)
        assert report.error is None, f"{name}: {report.error}"
        assert report.failed == 0, report.to_text()
        assert report.passed > 0
        assert report.exit_code == ExitCode.OK

    def test_directory_exit_code(self, corpus_report):
        """测试目录运行的汇总"""
        assert [name for name, _ in corpus_report.scripts] == SCRIPTS
        assert corpus_report.exit_code == ExitCode.OK
        assert corpus_report.errors == 0
        assert corpus_report.failed == 0

    def test_schema(self, corpus_report):
        """测试目录报告与单个报告都符合 schema"""
        jsonschema.validate(json.loads(corpus_report.render(ReportFormat.JSON)), SCHEMA)
        for _, report in corpus_report.scripts:
            jsonschema.validate(json.loads(report.to_json()), SCHEMA)

    def test_deterministic_json(self, corpus_report):
        """测试两次运行逐字节一致"""
        again = run_directory(CORPUS, RunOptions(format=ReportFormat.JSON))
        assert again.render(ReportFormat.JSON) == corpus_report.render(ReportFormat.JSON)
