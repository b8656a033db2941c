"""
脚本中的类值

ClassValue 是带环信息的多项式：
- ring 为 Variety：Chow 类，比较与显示前化为正规形式
- ring 为 KTheoryModel：增广坐标下的 K 类
- ring 为 None：还没有落到具体环上的常数或裸生成元，与其它类运算时跟随对方

coefficients 记录 0 次系数变量（如乘法律的 b），它们不参与 Chow 改写。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Tuple

from src.core.arith import GradedPolynomial, merge_degrees
from src.core.chow import Bundle, SectionModel, Variety
from src.core.cli.script import COEFFICIENT_SYMBOLS
from src.core.errors import StructuralError
from src.core.fgl import chow_normal_form
from src.core.ktheory import KTheoryModel
from src.core.orth import OrthBundle


def same_variety(a: Variety, b: Variety) -> bool:
    """同一对象，或表示完全相同（名称、生成元、关系、点类）"""
    return a is b or (type(a) is type(b) and a.to_dict() == b.to_dict())


def same_ring(a: Any, b: Any) -> bool:
    if a is None or b is None:
        return a is None and b is None
    if isinstance(a, KTheoryModel) and isinstance(b, KTheoryModel):
        if a is b:
            return True
        if a.names != b.names or a.cap != b.cap:
            return False
        if a.variety is None or b.variety is None:
            return a.variety is None and b.variety is None
        return same_variety(a.variety, b.variety)
    if isinstance(a, Variety) and isinstance(b, Variety):
        return same_variety(a, b)
    return False


def describe_ring(ring: Any) -> str:
    if ring is None:
        return "自由类"
    if isinstance(ring, KTheoryModel):
        return f"K({ring.variety.name if ring.variety is not None else 'free'})"
    return f"A({ring.name})"


def describe(value: Any) -> str:
    """错误信息中的值描述"""
    if isinstance(value, ClassValue):
        return f"类（{describe_ring(value.ring)}）"
    if isinstance(value, Variety):
        return f"空间 {value.name}"
    if isinstance(value, OrthBundle):
        return f"正交丛 {value!r}"
    if isinstance(value, Bundle):
        return f"丛 {value!r}"
    if isinstance(value, SectionModel):
        return f"截面 {value.name}"
    return type(value).__name__


@dataclass(frozen=True)
class ClassValue:
    """
    Attributes:
        poly: 多项式（未必是正规形式）
        ring: Variety / KTheoryModel / None
        coefficients: 0 次系数变量 ((名字, 0), ...)
    """

    poly: GradedPolynomial
    ring: Any = None
    coefficients: Tuple[Tuple[str, int], ...] = ()

    @classmethod
    def constant(cls, value: Any) -> "ClassValue":
        return cls(GradedPolynomial.constant(value))

    @classmethod
    def symbol(cls, name: str) -> "ClassValue":
        """裸生成元（1次）或系数变量（0次）"""
        if name in COEFFICIENT_SYMBOLS:
            return cls(GradedPolynomial.variable(name, 0), None, ((name, 0),))
        return cls(GradedPolynomial.variable(name, 1))

    @property
    def is_k(self) -> bool:
        return isinstance(self.ring, KTheoryModel)

    def normal_form(self) -> GradedPolynomial:
        if self.ring is None:
            return self.poly
        if isinstance(self.ring, KTheoryModel):
            return self.ring.coerce(self.poly)
        if self.coefficients:
            return chow_normal_form(self.ring, self.poly, dict(self.coefficients))
        return self.ring.normal_form(self.poly)

    def constant_value(self) -> Optional[Fraction]:
        """正规形式为常数时返回该常数，否则 None"""
        nf = self.normal_form()
        return nf.constant_term() if nf.is_constant() else None

    def __str__(self) -> str:
        return str(self.normal_form())


def unify(a: ClassValue, b: ClassValue) -> Tuple[Any, Tuple[Tuple[str, int], ...]]:
    """
    两个类值的公共环

    Raises:
        StructuralError: 两个类在不同的环上
    """
    if a.ring is None:
        ring = b.ring
    elif b.ring is None or same_ring(a.ring, b.ring):
        ring = a.ring
    else:
        raise StructuralError(f"类不在同一个环上: {describe_ring(a.ring)} 与 {describe_ring(b.ring)}")
    coefficients = tuple(sorted(merge_degrees(dict(a.coefficients), dict(b.coefficients)).items()))
    return ring, coefficients


def bind(value: ClassValue, ring: Any) -> ClassValue:
    """把类值放到指定的环上"""
    if value.ring is not None and not same_ring(value.ring, ring):
        raise StructuralError(f"类在 {describe_ring(value.ring)} 上，不在 {describe_ring(ring)} 上")
    return ClassValue(value.poly, ring, value.coefficients)


def combine(op: str, a: ClassValue, b: ClassValue) -> ClassValue:
    ring, coefficients = unify(a, b)
    if op == "+":
        poly = a.poly + b.poly
    elif op == "-":
        poly = a.poly - b.poly
    elif op == "*":
        poly = a.poly * b.poly
    else:
        raise StructuralError(f"未知的运算 {op}")
    return ClassValue(poly, ring, coefficients)


def equal(a: ClassValue, b: ClassValue) -> Tuple[GradedPolynomial, GradedPolynomial]:
    """放到公共环上后两边的正规形式"""
    ring, coefficients = unify(a, b)
    left = ClassValue(a.poly, ring, coefficients).normal_form()
    right = ClassValue(b.poly, ring, coefficients).normal_form()
    return left, right
