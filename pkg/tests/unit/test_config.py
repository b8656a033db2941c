"""
引擎配置单元测试
"""

import json

import pytest

from src.utils.config import EngineConfig


@pytest.fixture(autouse=True)
def reset_singleton():
    EngineConfig.reset_instance()
    yield
    EngineConfig.reset_instance()


def _write(tmp_path, data) -> str:
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


class TestEngineConfig:
    """EngineConfig 测试"""

    def test_defaults_file(self):
        """测试仓库自带的默认配置"""
        config = EngineConfig.load()
        assert config.cap == 8
        assert config.format == "text"
        assert config.log_dir is None
        assert config.script_suffix == ".se"

    def test_singleton(self):
        """测试单例只加载一次"""
        assert EngineConfig.get_instance() is EngineConfig.get_instance()

    def test_partial_file(self, tmp_path):
        """测试缺省字段取默认值"""
        config = EngineConfig.load(_write(tmp_path, {"cap": 5, "format": "json"}))
        assert config.cap == 5
        assert config.format == "json"
        assert config.log_level == "INFO"

    def test_override(self):
        """测试命令行覆盖只替换非 None 的值"""
        config = EngineConfig().override(cap=10, format=None)
        assert config.cap == 10
        assert config.format == "text"

    def test_missing_file(self, tmp_path):
        """测试配置文件不存在"""
        with pytest.raises(FileNotFoundError, match="配置文件不存在"):
            EngineConfig.load(str(tmp_path / "missing.json"))

    def test_bad_json(self, tmp_path):
        """测试 JSON 格式错误"""
        path = tmp_path / "bad.json"
        path.write_text("{cap: 8", encoding="utf-8")
        with pytest.raises(ValueError, match="JSON格式错误"):
            EngineConfig.load(str(path))

    def test_unknown_field(self, tmp_path):
        """测试未知字段"""
        with pytest.raises(ValueError, match="未知字段"):
            EngineConfig.load(_write(tmp_path, {"api_key": "x"}))

    def test_top_level_must_be_object(self, tmp_path):
        """测试顶层必须是对象"""
        with pytest.raises(ValueError, match="顶层必须是对象"):
            EngineConfig.load(_write(tmp_path, [1, 2]))

    @pytest.mark.parametrize(
        "changes, message",
        [
            ({"cap": -1}, "cap"),
            ({"cap": True}, "cap"),
            ({"format": "xml"}, "format"),
            ({"log_level": ""}, "log_level"),
            ({"log_dir": 3}, "log_dir"),
            ({"script_suffix": "se"}, "script_suffix"),
        ],
    )
    def test_invalid_values(self, changes, message):
        """测试字段校验"""
        with pytest.raises(ValueError, match=message):
            EngineConfig(**changes)

    def test_to_dict(self):
        """测试字典形式"""
        assert EngineConfig().to_dict() == {
            "cap": 8,
            "format": "text",
            "log_level": "INFO",
            "log_dir": None,
            "script_suffix": ".se",
        }
