"""
日志模块单元测试

测试日志配置的正确性，包括：
- 日志文件创建
- 日志格式验证
- 日志级别测试
- 控制台输出只走 stderr
"""

import time

import pytest

from src.utils.logger import add_module_name, get_logger, setup_logger


@pytest.fixture(autouse=True)
def restore_logger():
    yield
    setup_logger(level="WARNING")


class TestLogger:
    """日志模块测试类"""

    def test_logger_instance(self):
        """测试获取 logger 实例"""
        logger = get_logger()
        assert logger is not None, "logger 实例不应为 None"

    def test_log_file_creation(self, tmp_path):
        """测试日志文件是否正确创建"""
        test_log_dir = tmp_path / "test_logs"
        test_log_file = "test.log"

        setup_logger(log_dir=str(test_log_dir), log_file=test_log_file)
        logger = get_logger()
        logger.info("测试日志文件创建")

        # 等待日志写入
        time.sleep(0.1)

        log_file_path = test_log_dir / test_log_file
        assert log_file_path.exists(), f"日志文件应该被创建: {log_file_path}"

    def test_no_file_without_dir(self, tmp_path, monkeypatch):
        """测试不指定目录时不写文件"""
        monkeypatch.chdir(tmp_path)
        setup_logger(level="DEBUG")
        get_logger().info("只写控制台")
        assert list(tmp_path.iterdir()) == []

    def test_log_levels(self, tmp_path):
        """测试文件日志记录 DEBUG 以上所有级别"""
        test_log_dir = tmp_path / "test_logs_levels"
        test_log_file = "test_levels.log"

        setup_logger(level="WARNING", log_dir=str(test_log_dir), log_file=test_log_file)
        logger = get_logger()

        logger.debug("这是 DEBUG 级别日志")
        logger.info("这是 INFO 级别日志")
        logger.warning("这是 WARNING 级别日志")
        logger.error("这是 ERROR 级别日志")

        time.sleep(0.1)

        log_content = (test_log_dir / test_log_file).read_text(encoding="utf-8")
        for level in ("DEBUG", "INFO", "WARNING", "ERROR"):
            assert level in log_content, f"日志应包含 {level} 级别"

    def test_log_format(self, tmp_path):
        """测试日志格式：时间 | 等级 | 模块名:行号 | 信息"""
        test_log_dir = tmp_path / "test_logs_format"
        test_log_file = "test_format.log"

        setup_logger(log_dir=str(test_log_dir), log_file=test_log_file)
        test_message = "测试日志格式"
        get_logger().info(test_message)

        time.sleep(0.1)

        log_content = (test_log_dir / test_log_file).read_text(encoding="utf-8")
        lines = [line for line in log_content.strip().split("\n") if test_message in line]
        assert lines, "日志应包含消息内容"
        parts = lines[0].split("|")
        assert len(parts) == 4, "日志应包含4个部分（时间、等级、位置、信息）"
        assert parts[1].strip() == "INFO"
        assert parts[2].strip().startswith("test_logger:")

    def test_console_goes_to_stderr(self, capsys):
        """测试控制台日志写到 stderr，stdout 保持干净"""
        setup_logger(level="INFO")
        get_logger().info("写到标准错误")
        captured = capsys.readouterr()
        assert captured.out == ""

    def test_invalid_level(self):
        """测试无效的日志等级"""
        with pytest.raises(ValueError, match="无效的日志等级"):
            setup_logger(level="LOUD")

    @pytest.mark.parametrize(
        "name, expected",
        [
            ("src.core.chow.blowup", "blowup"),
            ("__main__", "main"),
            ("main", "main"),
        ],
    )
    def test_module_name(self, name, expected):
        """测试模块名提取"""
        record = {"name": name, "extra": {}}
        assert add_module_name(record) is True
        assert record["extra"]["module_name"] == expected

    def test_chinese_support(self, tmp_path):
        """测试中文日志支持"""
        test_log_dir = tmp_path / "test_logs_chinese"
        test_log_file = "test_chinese.log"

        setup_logger(log_dir=str(test_log_dir), log_file=test_log_file)
        chinese_message = "这是一条中文日志消息：爆破中心已构造"
        get_logger().info(chinese_message)

        time.sleep(0.1)

        log_content = (test_log_dir / test_log_file).read_text(encoding="utf-8")
        assert chinese_message in log_content, "日志应正确支持中文"
