"""
引擎异常定义

所有异常都继承自 ValueError，调用方可以统一捕获：
- StructuralError: 结构错误（变量次数表冲突、类不属于该簇等）
- DomainError: 数学前提不满足（常数项不为1、奇数秩二次曲面等）
- ConstructionError: 爆破构造自检失败
- UnsupportedModelError: 截面模型超出分裂/正则模型族
- IndependenceError: 两个截面占用了同一个直和项
- ScriptError: 脚本错误（ScriptSyntaxError / ScriptEvaluationError），消息以 "line N:" 开头
"""

from typing import Optional


class SqrtEulerError(ValueError):
    """引擎异常基类"""


class StructuralError(SqrtEulerError):
    """结构错误：变量表不一致、簇不匹配、构造参数格式错误"""


class DomainError(SqrtEulerError):
    """定义域错误：违反运算的数学前提"""


class ConstructionError(SqrtEulerError):
    """构造错误：爆破的 Gysin/法丛数据不自洽"""


class UnsupportedModelError(SqrtEulerError):
    """模型不支持：截面不是正则的，或不取值于 V"""


class IndependenceError(SqrtEulerError):
    """独立性错误：两个截面的直和项重叠"""


class ScriptError(SqrtEulerError):
    """
    脚本错误基类

    Attributes:
        line: 语句所在行号（从1开始）
        column: 列号（从1开始），未知时为 None
        detail: 不带位置前缀的原始信息

    消息总是以 "line N:" 开头。
    """

    def __init__(self, detail: str, line: int, column: Optional[int] = None):
        self.line = line
        self.column = column
        self.detail = detail
        where = f"line {line}:{column}:" if column is not None else f"line {line}:"
        super().__init__(f"{where} {detail}")


class ScriptSyntaxError(ScriptError):
    """语法错误：词法、语法、未声明的名字、参数个数不符"""


class ScriptEvaluationError(ScriptError):
    """求值错误：包装引擎抛出的异常，原始异常保存在 origin"""

    def __init__(
        self,
        detail: str,
        line: int,
        column: Optional[int] = None,
        origin: Optional[Exception] = None,
    ):
        super().__init__(detail, line, column)
        self.origin = origin
