"""
增广坐标下的 K 类

模型簇的每个（1次）Chow 生成元 v 对应一个增广变量 ℓ_v，约定 1 - ℓ_v = O(±v)。
陈根为 Σ a_v·v 的线丛的类为 ∏ (1 - ℓ_v)^{±a_v}（负指数按几何级数展开）。
增广理想的 dim+1 次幂为0，所有 K 类按 cap = dim 截断。

KTheoryModel.free(cap) 给出只有一个变量 l 的"万有线丛"模型，用于 sqrt_line 的直接计算。
"""

from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from src.core.arith import GradedPolynomial, series_inverse, to_fraction
from src.core.chow import Bundle, Variety
from src.core.errors import DomainError, StructuralError

FREE_VARIABLE = "l"


def augmentation_name(generator: str) -> str:
    return f"l_{generator}"


class KTheoryModel:
    """
    模型簇的 K 群（增广坐标表示）

    Attributes:
        variety: Chow 模型（free 模型为 None）
        cap: 幂零截断次数
        names: Chow 生成元 → (增广变量, 符号)，1 - 变量 = O(符号·生成元)
    """

    def __init__(
        self,
        variety: Optional[Variety],
        cap: Optional[int] = None,
        names: Optional[Mapping[str, Tuple[str, int]]] = None,
    ):
        if variety is None and cap is None:
            raise StructuralError("free 模型必须显式给出截断次数")
        if cap is not None and (not isinstance(cap, int) or cap < 0):
            raise DomainError(f"截断次数必须是非负整数: {cap!r}")
        self.variety = variety
        self.cap = cap if cap is not None else variety.dimension

        if names is None:
            if variety is None:
                names = {FREE_VARIABLE: (FREE_VARIABLE, 1)}
            else:
                names = {g: (augmentation_name(g), 1) for g, _ in variety.generators}
        if variety is not None:
            for g, deg in variety.generators:
                if deg != 1:
                    raise StructuralError(f"增广坐标只支持1次生成元: {g}={deg}")
                if g not in names:
                    raise StructuralError(f"生成元 {g} 没有对应的增广变量")
        for _, (_, sign) in names.items():
            if sign not in (1, -1):
                raise StructuralError(f"增广变量符号必须是 ±1: {sign!r}")
        self.names: Dict[str, Tuple[str, int]] = dict(names)
        self.degrees: Dict[str, int] = {var: 1 for var, _ in self.names.values()}

    @classmethod
    def free(cls, cap: int) -> "KTheoryModel":
        return cls(None, cap)

    # ------------------------------------------------------------------
    # 基本元素
    # ------------------------------------------------------------------

    def zero(self) -> GradedPolynomial:
        return GradedPolynomial.zero(self.degrees, self.cap)

    def one(self) -> GradedPolynomial:
        return GradedPolynomial.constant(1, self.degrees, self.cap)

    def constant(self, value: Any) -> GradedPolynomial:
        return GradedPolynomial.constant(to_fraction(value), self.degrees, self.cap)

    def variable(self, generator: str) -> GradedPolynomial:
        var, _ = self.names[generator]
        return GradedPolynomial.variable(var, 1, self.degrees, self.cap)

    def coerce(self, cls: Any) -> GradedPolynomial:
        if not isinstance(cls, GradedPolynomial):
            return self.constant(cls)
        stray = [v for v in cls.variables() if v not in self.degrees]
        if stray:
            raise StructuralError(f"K 类含模型之外的变量: {stray}")
        return GradedPolynomial(cls.terms, self.degrees, self.cap)

    # ------------------------------------------------------------------
    # 线丛
    # ------------------------------------------------------------------

    def _power(self, base: GradedPolynomial, exponent: int) -> GradedPolynomial:
        if exponent >= 0:
            return base ** exponent
        return series_inverse(base, self.cap) ** (-exponent)

    def line_from_twists(self, twists: Mapping[str, int]) -> GradedPolynomial:
        """∏ (1 - ℓ_v)^{±a_v}"""
        result = self.one()
        for g, a in twists.items():
            if a == 0:
                continue
            if g not in self.names:
                raise StructuralError(f"没有生成元 {g} 的增广变量")
            var, sign = self.names[g]
            base = self.one() - GradedPolynomial.variable(var, 1, self.degrees, self.cap)
            result = result * self._power(base, sign * a)
        return result.truncate(self.cap)

    def line_class(self, root: Any) -> GradedPolynomial:
        """
        陈根为 root 的线丛的 K 类

        Args:
            root: Chow 中的1次类，或整数 a（free 模型与射影模型上的 O(a)）

        Raises:
            DomainError: 陈根系数不是整数
        """
        if isinstance(root, int) and not isinstance(root, bool):
            if len(self.names) != 1:
                raise StructuralError("整数扭曲只适用于单生成元模型")
            (g,) = self.names
            return self.line_from_twists({g: root})
        if not isinstance(root, GradedPolynomial):
            raise StructuralError(f"陈根必须是 Chow 类或整数: {root!r}")
        twists: Dict[str, int] = {}
        for mono, coeff in root.terms.items():
            if len(mono.powers) != 1 or mono.powers[0][1] != 1:
                raise DomainError(f"陈根必须是生成元的线性组合: {root}")
            if coeff.denominator != 1:
                raise DomainError(f"陈根系数必须是整数: {root}")
            twists[mono.powers[0][0]] = int(coeff)
        return self.line_from_twists(twists)

    def line_twists(self, cls: GradedPolynomial) -> Optional[Dict[str, int]]:
        """
        若 cls 是线丛的类，返回各生成元上的扭曲次数，否则返回 None

        扭曲从线性部分读出，再整体展开比对。
        """
        cls = self.coerce(cls)
        if cls.constant_term() != 1:
            return None
        twists: Dict[str, int] = {}
        for g, (var, sign) in self.names.items():
            a = -cls.coefficient({var: 1}) * sign
            if a.denominator != 1:
                return None
            twists[g] = int(a)
        if self.line_from_twists(twists) != cls:
            return None
        return twists

    def is_line(self, cls: GradedPolynomial) -> bool:
        return self.line_twists(cls) is not None

    # ------------------------------------------------------------------
    # λ 运算
    # ------------------------------------------------------------------

    def dual(self, cls: Any) -> GradedPolynomial:
        """
        对偶（ψ^{-1}）：每个线丛取逆，ℓ ↦ 1 - (1 - ℓ)^{-1}
        """
        cls = self.coerce(cls)
        mapping = {}
        for var, _ in self.names.values():
            ell = GradedPolynomial.variable(var, 1, self.degrees, self.cap)
            mapping[var] = self.one() - series_inverse(self.one() - ell, self.cap)
        return cls.substitute(mapping, self.cap)

    def bundle_lines(self, V: Bundle) -> Tuple[List[GradedPolynomial], List[GradedPolynomial]]:
        """V 的陈根线丛与商根线丛的 K 类"""
        return [self.line_class(r) for r in V.roots], [self.line_class(q) for q in V.quotient_roots]

    def lambda_polynomial(self, V: Bundle) -> List[GradedPolynomial]:
        """
        λ^0(V), ..., λ^rank(V)

        λ_t(V) = ∏(1 + t·L_j) / ∏(1 + t·L_q)，商根按 t 的多项式逐个相除
        """
        lines, quotients = self.bundle_lines(V)
        coeffs = [self.one()]
        for L in lines:
            shifted = coeffs + [self.zero()]
            for k in range(len(coeffs), 0, -1):
                shifted[k] = shifted[k] + L * coeffs[k - 1]
            coeffs = shifted
        for Q in quotients:
            divided = [coeffs[0]]
            for k in range(1, len(coeffs) - 1):
                divided.append(coeffs[k] - Q * divided[k - 1])
            coeffs = divided
        return [c.truncate(self.cap) for c in coeffs[: V.rank + 1]]

    def det(self, V: Bundle) -> GradedPolynomial:
        """det V = λ^rank(V)"""
        lines, quotients = self.bundle_lines(V)
        result = self.one()
        for L in lines:
            result = result * L
        for Q in quotients:
            result = result * series_inverse(Q, self.cap)
        return result.truncate(self.cap)

    def complete_symmetric(self, lines: Sequence[GradedPolynomial], degree: int) -> GradedPolynomial:
        """h_degree(L_1, ..., L_r)，即 Sym^degree(⊕L_i)"""
        if degree < 0:
            return self.zero()
        table = [self.one()] + [self.zero()] * degree
        for L in lines:
            updated = list(table)
            for j in range(1, degree + 1):
                updated[j] = updated[j - 1] * L + table[j]
            table = updated
        return table[degree].truncate(self.cap)

    # ------------------------------------------------------------------
    # 与 Chow 的首项比较
    # ------------------------------------------------------------------

    def _require_chow(self) -> Variety:
        if self.variety is None:
            raise StructuralError("free 模型没有 Chow 环")
        return self.variety

    def leading_term(self, cls: Any) -> GradedPolynomial:
        """
        ℓ_v ↦ -(±v) 后的最低次部分

        Returns:
            GradedPolynomial: Chow 生成元的多项式（未化简）；cls 为0时为0
        """
        variety = self._require_chow()
        mapping = {}
        for g, (var, sign) in self.names.items():
            mapping[var] = variety.generator(g).with_cap(None) * (-sign)
        return lowest_part(self.coerce(cls).with_cap(None).substitute(mapping))

    def chern_character(self, cls: Any) -> GradedPolynomial:
        """ch：ℓ_v ↦ 1 - exp(±v)，在 Chow 环中化简"""
        variety = self._require_chow()
        cap = variety.dimension
        mapping = {}
        for g, (var, sign) in self.names.items():
            x = variety.generator(g) * sign
            term = variety.one()
            exp_series = variety.one()
            for k in range(1, cap + 1):
                term = term * x * Fraction(1, k)
                exp_series = exp_series + term
            mapping[var] = variety.one() - exp_series
        return variety.normal_form(self.coerce(cls).with_cap(None).substitute(mapping, cap))

    def to_chow_leading(self, cls: Any) -> GradedPolynomial:
        """
        陈特征在 Chow 环中的最低次部分

        与 leading_term 的正规形式在其非零时一致；后者在 Chow 中消失时取更高阶的修正。
        """
        return lowest_part(self.chern_character(cls))

    def __repr__(self) -> str:
        name = self.variety.name if self.variety is not None else "free"
        return f"KTheoryModel({name}, cap={self.cap})"


def lowest_part(cls: GradedPolynomial) -> GradedPolynomial:
    if cls.is_zero():
        return cls
    return cls.homogeneous_part(cls.min_degree())


