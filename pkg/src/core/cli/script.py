"""
脚本语法树

脚本一行一条语句，语句分两类：
- 声明：space / bundle / orth / section / class，名字只能赋值一次
- 指令：print / check / integrate，结果写入报告

表达式节点与语句节点都是不可变 dataclass，带行号（语句）或列号（表达式）。
函数签名表 SIGNATURES 是语言定义的一部分，解析器用它检查参数个数，
解释器按同一张表注册实现。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Dict, Optional, Tuple, Union

Label = Tuple[str, int]


class StatementKind:
    """语句种类常量"""

    SPACE = "space"
    BUNDLE = "bundle"
    ORTH = "orth"
    SECTION = "section"
    CLASS = "class"
    PRINT = "print"
    CHECK = "check"
    INTEGRATE = "integrate"

    DECLARATIONS = (SPACE, BUNDLE, ORTH, SECTION, CLASS)
    DIRECTIVES = (PRINT, CHECK, INTEGRATE)
    ALL = DECLARATIONS + DIRECTIVES


# 语句内部的关键字，不能用作名字
KEYWORDS = frozenset({"on", "in", "along", "normal", "dual"})

# 构造器，只在特定位置出现
CONSTRUCTORS = frozenset({"P", "CI", "O", "blowup", "hyperbolic", "section", "reduce"})

# 表达式中未声明的名字只能是这些生成元（K 理论的增广变量为 l 与 l_<生成元>）
GENERATOR_SYMBOLS = frozenset({"H", "d", "z", "h", "l"})

# 0 次系数变量（乘法形式群律的 b）
COEFFICIENT_SYMBOLS = frozenset({"b"})


def is_generator_symbol(name: str) -> bool:
    if name in GENERATOR_SYMBOLS or name in COEFFICIENT_SYMBOLS:
        return True
    return name.startswith("l_") and name[2:] in GENERATOR_SYMBOLS


# ----------------------------------------------------------------------
# 表达式
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Number:
    value: Fraction
    column: int


@dataclass(frozen=True)
class Name:
    name: str
    column: int


@dataclass(frozen=True)
class UnaryMinus:
    operand: "Expr"
    column: int


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "Expr"
    right: "Expr"
    column: int


@dataclass(frozen=True)
class Call:
    """
    函数调用 f(a, b; labels)

    Attributes:
        function: 函数名
        args: 分号前的参数
        labels: 分号后的直和项标签（没有分号时为空）
    """

    function: str
    args: Tuple["Expr", ...]
    labels: Tuple[Label, ...]
    column: int


Expr = Union[Number, Name, UnaryMinus, BinaryOp, Call]


# ----------------------------------------------------------------------
# 空间、丛、正交丛、截面的构造式
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ProjectiveForm:
    """P(n) 或 CI(n; d1, ...)"""

    ambient_dim: int
    degrees: Tuple[int, ...]
    column: int

    def __str__(self) -> str:
        if not self.degrees:
            return f"P({self.ambient_dim})"
        return f"CI({self.ambient_dim}; {', '.join(str(d) for d in self.degrees)})"


@dataclass(frozen=True)
class SubspaceForm:
    """P(k) in NAME"""

    dimension: int
    parent: str
    column: int


@dataclass(frozen=True)
class BlowupForm:
    """
    blowup(Y along X normal N) 或 blowup(Y along s)

    normal 为 None 时 center 是截面名。
    """

    ambient: str
    center: str
    normal: Optional[str]
    column: int


SpaceForm = Union[ProjectiveForm, SubspaceForm, BlowupForm]
SpaceRef = Union[Name, ProjectiveForm]


@dataclass(frozen=True)
class BundleTerm:
    """
    丛的一个加项

    kind 为 "line"（O(twist)）、"bundle"（已声明的丛）或 "dual"（dual(丛)）。
    """

    kind: str
    multiplicity: int
    twist: Optional[int]
    name: Optional[str]
    column: int


@dataclass(frozen=True)
class HyperbolicForm:
    bundle: str
    sign: int
    column: int


@dataclass(frozen=True)
class OrthSumForm:
    parts: Tuple[str, ...]
    column: int


@dataclass(frozen=True)
class OrthReduceForm:
    orth: str
    labels: Tuple[Label, ...]
    column: int


OrthForm = Union[HyperbolicForm, OrthSumForm, OrthReduceForm]


@dataclass(frozen=True)
class SectionForm:
    target: str
    labels: Tuple[Label, ...]
    column: int


# ----------------------------------------------------------------------
# 语句
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SpaceDecl:
    kind: ClassVar[str] = StatementKind.SPACE
    line: int
    source: str
    name: str
    form: SpaceForm


@dataclass(frozen=True)
class BundleDecl:
    kind: ClassVar[str] = StatementKind.BUNDLE
    line: int
    source: str
    name: str
    terms: Tuple[BundleTerm, ...]
    base: SpaceRef


@dataclass(frozen=True)
class OrthDecl:
    kind: ClassVar[str] = StatementKind.ORTH
    line: int
    source: str
    name: str
    form: OrthForm


@dataclass(frozen=True)
class SectionDecl:
    kind: ClassVar[str] = StatementKind.SECTION
    line: int
    source: str
    name: str
    form: SectionForm


@dataclass(frozen=True)
class ClassDecl:
    kind: ClassVar[str] = StatementKind.CLASS
    line: int
    source: str
    name: str
    expr: Expr


@dataclass(frozen=True)
class PrintStmt:
    kind: ClassVar[str] = StatementKind.PRINT
    line: int
    source: str
    expr: Expr


@dataclass(frozen=True)
class CheckStmt:
    kind: ClassVar[str] = StatementKind.CHECK
    line: int
    source: str
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class IntegrateStmt:
    kind: ClassVar[str] = StatementKind.INTEGRATE
    line: int
    source: str
    expr: Expr
    space: SpaceRef


Statement = Union[
    SpaceDecl, BundleDecl, OrthDecl, SectionDecl, ClassDecl, PrintStmt, CheckStmt, IntegrateStmt
]


@dataclass(frozen=True)
class Script:
    """按行号排列的语句序列"""

    statements: Tuple[Statement, ...] = ()

    def __len__(self) -> int:
        return len(self.statements)

    def __iter__(self):
        return iter(self.statements)

    def declarations(self) -> Dict[str, str]:
        """名字 → 声明种类"""
        return {
            s.name: s.kind for s in self.statements if s.kind in StatementKind.DECLARATIONS
        }


# ----------------------------------------------------------------------
# 函数签名
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Signature:
    """
    Attributes:
        min_args / max_args: 分号前参数个数范围
        labels: 是否接受分号后的标签列表
    """

    min_args: int
    max_args: int
    labels: bool = False

    def describe(self) -> str:
        if self.min_args == self.max_args:
            return f"{self.min_args} 个参数"
        return f"{self.min_args}..{self.max_args} 个参数"


SIGNATURES: Dict[str, Signature] = {
    "sqrt_euler": Signature(1, 1),
    "euler": Signature(1, 1),
    "chern": Signature(1, 2),
    "segre": Signature(1, 2),
    "reduce": Signature(1, 1, labels=True),
    "localize": Signature(2, 4),
    "localize_lci": Signature(2, 2),
    "localize2": Signature(3, 5),
    "euler_local": Signature(2, 4),
    "pushforward": Signature(2, 3),
    "quadric_pushforward": Signature(2, 2),
    "integrate": Signature(2, 2),
    "sqrt_line": Signature(1, 2),
    "euler_k": Signature(1, 1),
    "sqrt_euler_k": Signature(1, 1),
    "localize_k": Signature(2, 2),
    "coeff": Signature(1, 1),
    "sqrt_h": Signature(2, 2),
    # O(a) 只作为 sqrt_line 的参数
    "O": Signature(1, 1),
}
