"""
形式群律

F(u, v) = u + v + Σ a_ij u^i v^j，交换律与结合律按 u、v 的次数截断校验。系数可以是有理数，也可以含
0 次的系数变量（如乘法律的 b）。

- FormalGroupLaw.additive(): u + v（Chow）
- FormalGroupLaw.multiplicative(beta): u + v - β·uv（K 理论）
- FormalGroupLaw.from_table(table): 自定义系数表，构造时校验交换律与结合律
- FGLRegistry: 命名形式群律的注册表，CLI 的 sqrt_h(V, law) 通过名字查找
"""

from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple, Union

from src.core.arith import GradedPolynomial, Monomial, merge_degrees, to_fraction
from src.core.errors import DomainError, StructuralError
from src.utils.logger import logger

U = "u"
V = "v"
W = "w"

DEFAULT_CAP = 8

Coefficient = Union[int, str, Any]


def _ring_coefficient(value: Coefficient, ring_degrees: Mapping[str, int]) -> GradedPolynomial:
    """系数表中的一项：有理数、系数变量名或 0 次多项式"""
    if isinstance(value, GradedPolynomial):
        if value.max_degree() not in (None, 0):
            raise StructuralError(f"形式群律系数必须是0次的: {value}")
        return value.with_degrees(ring_degrees)
    if isinstance(value, str):
        if value not in ring_degrees:
            raise StructuralError(f"系数变量 {value} 未声明")
        return GradedPolynomial.variable(value, 0, ring_degrees)
    return GradedPolynomial.constant(to_fraction(value), ring_degrees)


class FormalGroupLaw:
    """
    截断形式群律

    Attributes:
        name: 名称
        cap: 校验与派生级数的截断次数
        ring_degrees: 系数变量（次数均为0）
        law: F(u, v)
    """

    def __init__(
        self,
        name: str,
        table: Mapping[Tuple[int, int], Coefficient],
        cap: int = DEFAULT_CAP,
        ring_variables: Tuple[str, ...] = (),
    ):
        if not isinstance(cap, int) or isinstance(cap, bool) or cap < 1:
            raise DomainError(f"形式群律的截断次数必须是正整数: {cap!r}")
        clash = [r for r in ring_variables if r in (U, V, W)]
        if clash:
            raise StructuralError(f"系数变量名与 u/v/w 冲突: {clash}")
        self.name = name
        self.cap = cap
        self.ring_degrees: Dict[str, int] = {r: 0 for r in ring_variables}
        self.degrees = merge_degrees(self.ring_degrees, {U: 1, V: 1})

        law = GradedPolynomial.variable(U, 1, self.degrees) + GradedPolynomial.variable(V, 1, self.degrees)
        for (i, j), raw in table.items():
            if i < 1 or j < 1:
                raise DomainError(f"高阶项必须同时含 u 与 v: u^{i} v^{j}（F(u, 0) = u）")
            coeff = _ring_coefficient(raw, self.ring_degrees)
            law = law + coeff * GradedPolynomial.monomial({U: i, V: j}, 1, self.degrees)
        # 有限系数表视为精确多项式，cap 只约束校验与派生级数的默认精度
        self.law = law

        self._check_symmetric()
        self._check_associative()
        logger.debug(f"构造形式群律 {name}: F(u, v) = {self.law}")

    # ------------------------------------------------------------------
    # 构造
    # ------------------------------------------------------------------

    @classmethod
    def additive(cls, cap: int = DEFAULT_CAP) -> "FormalGroupLaw":
        return cls("additive", {}, cap)

    @classmethod
    def multiplicative(cls, beta: Coefficient = "b", cap: int = DEFAULT_CAP) -> "FormalGroupLaw":
        """
        u + v - β·uv

        Args:
            beta: 系数变量名（默认 "b"）或有理数
        """
        if isinstance(beta, str):
            return cls("multiplicative", {(1, 1): _negated(beta)}, cap, (beta,))
        return cls("multiplicative", {(1, 1): -to_fraction(beta)}, cap)

    @classmethod
    def from_table(
        cls,
        table: Mapping[Tuple[int, int], Coefficient],
        name: str = "custom",
        cap: int = DEFAULT_CAP,
        ring_variables: Tuple[str, ...] = (),
    ) -> "FormalGroupLaw":
        """
        由系数表 {(i, j): a_ij} 构造，a_ij 与 a_ji 必须相同

        Raises:
            DomainError: 不满足交换律或结合律
        """
        return cls(name, table, cap, ring_variables)

    # ------------------------------------------------------------------
    # 求值
    # ------------------------------------------------------------------

    def variable(self, name: str = U) -> GradedPolynomial:
        return GradedPolynomial.variable(name, 1, self.ring_degrees, self.cap)

    def apply(self, x: GradedPolynomial, y: GradedPolynomial, cap: Optional[int] = None) -> GradedPolynomial:
        """F(x, y)，x、y 为无常数项的级数"""
        cap = self.cap if cap is None else cap
        for series in (x, y):
            if series.constant_term() != 0:
                raise DomainError(f"形式群律只能代入无常数项的级数: {series}")
        # 先换名，避免 x 本身含 u/v 时代入互相干扰
        staged = self.law.substitute(
            {U: GradedPolynomial.variable("__x", 1), V: GradedPolynomial.variable("__y", 1)}, cap
        )
        return staged.substitute({"__x": x, "__y": y}, cap)

    def coefficient_table(self) -> Dict[Tuple[int, int], GradedPolynomial]:
        """高阶项系数 {(i, j): a_ij}"""
        table: Dict[Tuple[int, int], GradedPolynomial] = {}
        for mono, coeff in self.law.terms.items():
            i, j = mono.exponent(U), mono.exponent(V)
            if i >= 1 and j >= 1:
                ring = Monomial(tuple((var, e) for var, e in mono.powers if var not in (U, V)))
                piece = GradedPolynomial({ring: coeff}, self.ring_degrees)
                table[(i, j)] = table.get((i, j), GradedPolynomial.zero(self.ring_degrees)) + piece
        return table

    # ------------------------------------------------------------------
    # 校验
    # ------------------------------------------------------------------

    def _check_symmetric(self) -> None:
        swapped = self.law.substitute(
            {U: GradedPolynomial.variable(V, 1), V: GradedPolynomial.variable(U, 1)}, self.cap
        )
        if swapped != self.law.truncate(self.cap):
            raise DomainError(f"F(u, v) ≠ F(v, u): {self.law}")

    def _check_associative(self) -> None:
        u, v, w = (GradedPolynomial.variable(x, 1, self.ring_degrees, self.cap) for x in (U, V, W))
        left = self.apply(self.apply(u, v), w)
        right = self.apply(u, self.apply(v, w))
        if left != right:
            raise DomainError(f"形式群律不满足结合律（截断到 {self.cap} 次）: {self.law}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "cap": self.cap,
            "ring_variables": sorted(self.ring_degrees),
            "law": str(self.law),
        }

    def __repr__(self) -> str:
        return f"FormalGroupLaw({self.name}, cap={self.cap})"


def _negated(var: str) -> GradedPolynomial:
    return -GradedPolynomial.variable(var, 0)


class FGLRegistry:
    """
    命名形式群律注册表

    Attributes:
        _registry: 名称 → 工厂函数 factory(cap) -> FormalGroupLaw

    Example:
        >>> law = FGLRegistry.create("multiplicative", cap=4)
    """

    _registry: Dict[str, Callable[[int], FormalGroupLaw]] = {}

    @classmethod
    def register(cls, name: str, factory: Callable[[int], FormalGroupLaw]) -> None:
        """
        注册形式群律

        Raises:
            StructuralError: factory 不可调用
        """
        if not callable(factory):
            raise StructuralError(f"形式群律工厂必须可调用: {factory!r}")
        cls._registry[name] = factory
        logger.debug(f"注册形式群律: {name}")

    @classmethod
    def create(cls, name: str, cap: int = DEFAULT_CAP) -> FormalGroupLaw:
        """
        Raises:
            DomainError: 名称未注册
        """
        if name not in cls._registry:
            raise DomainError(f"未知的形式群律: {name}。可用: {cls.list()}")
        return cls._registry[name](cap)

    @classmethod
    def list(cls) -> List[str]:
        return sorted(cls._registry)

    @classmethod
    def is_registered(cls, name: str) -> bool:
        return name in cls._registry


FGLRegistry.register("additive", lambda cap: FormalGroupLaw.additive(cap))
FGLRegistry.register("multiplicative", lambda cap: FormalGroupLaw.multiplicative("b", cap))
