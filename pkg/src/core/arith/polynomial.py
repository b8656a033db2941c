"""
稀疏分次多项式

GradedPolynomial 是整个引擎的计算载体：Chow 环中的类（H、d、h、c_i、s_i）、
K 理论的增广坐标 ℓ、形式群律的幂级数都用它表示。

设计要点：
1. 系数全部是 fractions.Fraction，不出现浮点数
2. 单项式 → 系数 的稀疏字典，不存零系数
3. 每个变量有一个非负整数次数（变量次数表），单项式的加权次数由表计算
4. 可选截断次数 cap：超过 cap 的项在构造与运算中直接丢弃
5. 构造后不可变，所有运算返回新对象

使用方式:
    H = GradedPolynomial.variable("H")
    p = (1 + H) * (1 - H)        # 1 - H^2
    q = poly_mul(1 + H + H**2, 1 + H, cap=2)   # 1 + 2*H + 2*H^2
"""

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple, Union

import sympy

from src.core.errors import DomainError, StructuralError

Scalar = Union[int, Fraction]


def to_fraction(value: Any) -> Fraction:
    """把 int / Fraction / 'p/q' 字符串转换为 Fraction，拒绝浮点数"""
    if isinstance(value, bool):
        raise StructuralError(f"系数不能是布尔值: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            raise StructuralError(f"无法解析的有理数: {value!r}")
    raise StructuralError(f"系数必须是精确有理数，收到 {type(value).__name__}: {value!r}")


def merge_degrees(*tables: Mapping[str, int]) -> Dict[str, int]:
    """
    合并变量次数表

    Raises:
        StructuralError: 同名变量在不同表中次数不同
    """
    merged: Dict[str, int] = {}
    for table in tables:
        for var, deg in table.items():
            if var in merged and merged[var] != deg:
                raise StructuralError(
                    f"变量次数表不一致: {var} 的次数为 {merged[var]} 与 {deg}"
                )
            merged[var] = deg
    return merged


def combine_caps(*caps: Optional[int]) -> Optional[int]:
    """多个截断次数取最小值（None 表示不截断）"""
    present = [c for c in caps if c is not None]
    return min(present) if present else None


@dataclass(frozen=True, order=True)
class Monomial:
    """
    单项式：按变量名排序的 (变量, 指数) 元组，不存零指数

    Attributes:
        powers: ((变量名, 指数), ...)，变量名升序
    """

    powers: Tuple[Tuple[str, int], ...] = ()

    @classmethod
    def of(cls, exponents: Union[Mapping[str, int], Iterable[Tuple[str, int]]] = ()) -> "Monomial":
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        collected: Dict[str, int] = {}
        for var, exp in items:
            if not isinstance(exp, int) or exp < 0:
                raise DomainError(f"指数必须是非负整数: {var}^{exp}")
            collected[var] = collected.get(var, 0) + exp
        return cls(tuple(sorted((v, e) for v, e in collected.items() if e != 0)))

    def exponent(self, var: str) -> int:
        for v, e in self.powers:
            if v == var:
                return e
        return 0

    def as_dict(self) -> Dict[str, int]:
        return dict(self.powers)

    def variables(self) -> Tuple[str, ...]:
        return tuple(v for v, _ in self.powers)

    def is_one(self) -> bool:
        return not self.powers

    def degree(self, degrees: Mapping[str, int]) -> int:
        return sum(degrees[v] * e for v, e in self.powers)

    def __mul__(self, other: "Monomial") -> "Monomial":
        merged = dict(self.powers)
        for v, e in other.powers:
            merged[v] = merged.get(v, 0) + e
        return Monomial(tuple(sorted(merged.items())))

    def divides(self, other: "Monomial") -> bool:
        return all(other.exponent(v) >= e for v, e in self.powers)

    def quotient(self, divisor: "Monomial") -> "Monomial":
        """精确商 self / divisor（要求 divisor 整除 self）"""
        if not divisor.divides(self):
            raise DomainError(f"单项式 {divisor} 不整除 {self}")
        remaining = dict(self.powers)
        for v, e in divisor.powers:
            remaining[v] -= e
        return Monomial(tuple(sorted((v, e) for v, e in remaining.items() if e)))

    def without(self, var: str) -> "Monomial":
        return Monomial(tuple((v, e) for v, e in self.powers if v != var))

    def __str__(self) -> str:
        if not self.powers:
            return "1"
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in self.powers)


ONE = Monomial()


def _format_term(coeff: Fraction, mono: Monomial) -> str:
    if mono.is_one():
        return str(coeff)
    if coeff == 1:
        return str(mono)
    if coeff == -1:
        return f"-{mono}"
    return f"{coeff}*{mono}"


class GradedPolynomial:
    """
    稀疏分次多项式（不可变）

    Attributes:
        terms: 单项式 → 有理系数（只读视图）
        degrees: 变量次数表（只读视图）
        cap: 截断次数，None 表示不截断

    Example:
        >>> x = GradedPolynomial.variable("x")
        >>> str(poly_mul(1 + x + x**2, 1 + x, cap=2))
        '1 + 2*x + 2*x^2'
    """

    __slots__ = ("_terms", "_degrees", "_cap")

    def __init__(
        self,
        terms: Optional[Mapping[Monomial, Any]] = None,
        degrees: Optional[Mapping[str, int]] = None,
        cap: Optional[int] = None,
    ):
        table = dict(degrees or {})
        for var, deg in table.items():
            if not isinstance(var, str) or not var:
                raise StructuralError(f"变量名必须是非空字符串: {var!r}")
            if not isinstance(deg, int) or isinstance(deg, bool) or deg < 0:
                raise StructuralError(f"变量次数必须是非负整数: {var}={deg!r}")
        if cap is not None and (not isinstance(cap, int) or cap < 0):
            raise StructuralError(f"截断次数必须是非负整数: {cap!r}")

        clean: Dict[Monomial, Fraction] = {}
        for mono, raw in (terms or {}).items():
            coeff = to_fraction(raw)
            if coeff == 0:
                continue
            for var, _ in mono.powers:
                if var not in table:
                    raise StructuralError(f"变量 {var} 不在次数表中")
            if cap is not None and mono.degree(table) > cap:
                continue
            clean[mono] = coeff

        self._terms = clean
        self._degrees = table
        self._cap = cap

    # ------------------------------------------------------------------
    # 构造
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, degrees: Optional[Mapping[str, int]] = None, cap: Optional[int] = None) -> "GradedPolynomial":
        return cls({}, degrees, cap)

    @classmethod
    def constant(
        cls,
        value: Scalar,
        degrees: Optional[Mapping[str, int]] = None,
        cap: Optional[int] = None,
    ) -> "GradedPolynomial":
        return cls({ONE: value}, degrees, cap)

    @classmethod
    def variable(
        cls,
        name: str,
        degree: int = 1,
        degrees: Optional[Mapping[str, int]] = None,
        cap: Optional[int] = None,
    ) -> "GradedPolynomial":
        table = merge_degrees(degrees or {}, {name: degree})
        return cls({Monomial(((name, 1),)): 1}, table, cap)

    @classmethod
    def monomial(
        cls,
        exponents: Mapping[str, int],
        coeff: Scalar = 1,
        degrees: Optional[Mapping[str, int]] = None,
        cap: Optional[int] = None,
    ) -> "GradedPolynomial":
        return cls({Monomial.of(exponents): coeff}, degrees, cap)

    # ------------------------------------------------------------------
    # 访问
    # ------------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def degrees(self) -> Mapping[str, int]:
        return MappingProxyType(self._degrees)

    @property
    def cap(self) -> Optional[int]:
        return self._cap

    def degree_of(self, mono: Monomial) -> int:
        return mono.degree(self._degrees)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m.is_one() for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(ONE, Fraction(0))

    def coefficient(self, mono: Union[Monomial, Mapping[str, int]]) -> Fraction:
        if not isinstance(mono, Monomial):
            mono = Monomial.of(mono)
        return self._terms.get(mono, Fraction(0))

    def variables(self) -> Tuple[str, ...]:
        found = set()
        for mono in self._terms:
            found.update(mono.variables())
        return tuple(sorted(found))

    def max_degree(self) -> Optional[int]:
        if not self._terms:
            return None
        return max(self.degree_of(m) for m in self._terms)

    def min_degree(self) -> Optional[int]:
        if not self._terms:
            return None
        return min(self.degree_of(m) for m in self._terms)

    def homogeneous_part(self, k: int) -> "GradedPolynomial":
        """加权次数恰为 k 的部分"""
        return self._derive({m: c for m, c in self._terms.items() if self.degree_of(m) == k})

    def graded_parts(self) -> Dict[int, "GradedPolynomial"]:
        """按加权次数拆分：{k: 第 k 次齐次部分}"""
        buckets: Dict[int, Dict[Monomial, Fraction]] = {}
        for mono, coeff in self._terms.items():
            buckets.setdefault(self.degree_of(mono), {})[mono] = coeff
        return {k: self._derive(v) for k, v in sorted(buckets.items())}

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        """规范项序：先按加权次数升序，再按单项式字典序"""
        return sorted(self._terms.items(), key=lambda item: (self.degree_of(item[0]), item[0]))

    # ------------------------------------------------------------------
    # 变换
    # ------------------------------------------------------------------

    def _derive(self, terms: Mapping[Monomial, Fraction], cap: Optional[int] = None) -> "GradedPolynomial":
        return GradedPolynomial(terms, self._degrees, self._cap if cap is None else cap)

    def truncate(self, cap: int) -> "GradedPolynomial":
        return GradedPolynomial(self._terms, self._degrees, combine_caps(self._cap, cap))

    def with_cap(self, cap: Optional[int]) -> "GradedPolynomial":
        return GradedPolynomial(self._terms, self._degrees, cap)

    def with_degrees(self, degrees: Mapping[str, int]) -> "GradedPolynomial":
        return GradedPolynomial(self._terms, merge_degrees(self._degrees, degrees), self._cap)

    def scale(self, factor: Scalar) -> "GradedPolynomial":
        factor = to_fraction(factor)
        return self._derive({m: c * factor for m, c in self._terms.items()})

    def map_terms(self, fn) -> "GradedPolynomial":
        """逐项变换：fn(mono, coeff) -> GradedPolynomial，结果求和"""
        result = GradedPolynomial.zero(self._degrees, self._cap)
        for mono, coeff in self._terms.items():
            result = result + fn(mono, coeff)
        return result

    def divide_by_variable(self, var: str) -> "GradedPolynomial":
        """精确除以变量 var（每一项都必须含 var）"""
        shifted: Dict[Monomial, Fraction] = {}
        divisor = Monomial(((var, 1),))
        for mono, coeff in self._terms.items():
            if mono.exponent(var) == 0:
                raise DomainError(f"项 {_format_term(coeff, mono)} 不含变量 {var}，无法整除")
            shifted[mono.quotient(divisor)] = coeff
        return GradedPolynomial(shifted, self._degrees, None)

    def substitute(
        self,
        mapping: Mapping[str, Any],
        cap: Optional[int] = None,
    ) -> "GradedPolynomial":
        """
        代入：变量 → 多项式（或有理数），结果按 cap 截断

        未出现在 mapping 中的变量保持不变。用于级数复合、陈类代入等。
        """
        images: Dict[str, GradedPolynomial] = {}
        tables = [{v: d for v, d in self._degrees.items() if v not in mapping}]
        caps = [cap, self._cap]
        for var, image in mapping.items():
            if not isinstance(image, GradedPolynomial):
                image = GradedPolynomial.constant(to_fraction(image))
            images[var] = image
            tables.append(image.degrees)
            caps.append(image.cap)
        degrees = merge_degrees(*tables)
        target_cap = combine_caps(*caps)

        power_cache: Dict[Tuple[str, int], GradedPolynomial] = {}

        def power(var: str, exp: int) -> GradedPolynomial:
            key = (var, exp)
            if key not in power_cache:
                if exp == 1:
                    power_cache[key] = images[var].with_cap(target_cap)
                else:
                    power_cache[key] = poly_mul(power(var, exp - 1), images[var], target_cap)
            return power_cache[key]

        total: Dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            kept = Monomial(tuple((v, e) for v, e in mono.powers if v not in images))
            factor = GradedPolynomial({kept: coeff}, degrees, target_cap)
            for var, exp in mono.powers:
                if var in images:
                    factor = poly_mul(factor, power(var, exp), target_cap)
                    if factor.is_zero():
                        break
            for m, c in factor._terms.items():
                total[m] = total.get(m, Fraction(0)) + c
        return GradedPolynomial(total, degrees, target_cap)

    # ------------------------------------------------------------------
    # 算术
    # ------------------------------------------------------------------

    def _coerce(self, other: Any) -> Optional["GradedPolynomial"]:
        if isinstance(other, GradedPolynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return GradedPolynomial.constant(other, self._degrees)
        return None

    def __add__(self, other: Any) -> "GradedPolynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        degrees = merge_degrees(self._degrees, other._degrees)
        total = dict(self._terms)
        for mono, coeff in other._terms.items():
            total[mono] = total.get(mono, Fraction(0)) + coeff
        return GradedPolynomial(total, degrees, combine_caps(self._cap, other._cap))

    __radd__ = __add__

    def __neg__(self) -> "GradedPolynomial":
        return self._derive({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Any) -> "GradedPolynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "GradedPolynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Any) -> "GradedPolynomial":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "GradedPolynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError(f"幂指数必须是非负整数: {exponent!r}")
        result = GradedPolynomial.constant(1, self._degrees, self._cap)
        base = self
        while exponent:
            if exponent & 1:
                result = poly_mul(result, base)
            exponent >>= 1
            if exponent:
                base = poly_mul(base, base)
        return result

    def __eq__(self, other: Any) -> bool:
        other_poly = self._coerce(other)
        if other_poly is None:
            return NotImplemented
        return self._terms == other_poly._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # ------------------------------------------------------------------
    # 输出与转换
    # ------------------------------------------------------------------

    def __str__(self) -> str:
        ordered = self.sorted_terms()
        if not ordered:
            return "0"
        pieces = [_format_term(ordered[0][1], ordered[0][0])]
        for mono, coeff in ordered[1:]:
            if coeff < 0:
                pieces.append(f"- {_format_term(-coeff, mono)}")
            else:
                pieces.append(f"+ {_format_term(coeff, mono)}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"GradedPolynomial('{self}', cap={self._cap})"

    def to_dict(self) -> Dict[str, Any]:
        """规范 JSON 形式（项已排序，系数为 'p/q' 字符串）"""
        return {
            "degrees": {v: self._degrees[v] for v in sorted(self._degrees)},
            "cap": self._cap,
            "terms": [
                [[list(p) for p in mono.powers], str(coeff)]
                for mono, coeff in self.sorted_terms()
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "GradedPolynomial":
        try:
            terms = {
                Monomial.of((v, e) for v, e in powers): coeff
                for powers, coeff in data["terms"]
            }
            return cls(terms, data["degrees"], data.get("cap"))
        except (KeyError, TypeError) as e:
            raise StructuralError(f"无效的多项式 JSON: {e}")

    def to_sympy(self) -> sympy.Expr:
        pieces = []
        for mono, coeff in self.sorted_terms():
            factor = sympy.Rational(coeff.numerator, coeff.denominator)
            for var, exp in mono.powers:
                factor = factor * sympy.Symbol(var) ** exp
            pieces.append(factor)
        return sympy.Add(*pieces)

    @classmethod
    def from_sympy(
        cls,
        expr: sympy.Expr,
        degrees: Mapping[str, int],
        cap: Optional[int] = None,
    ) -> "GradedPolynomial":
        """
        从 sympy 表达式转换回来

        Raises:
            StructuralError: 表达式含次数表以外的符号，或系数不是有理数
        """
        expr = sympy.expand(sympy.sympify(expr))
        names = sorted(degrees)
        unknown = {str(s) for s in expr.free_symbols} - set(names)
        if unknown:
            raise StructuralError(f"表达式含未知符号: {sorted(unknown)}")
        if not names:
            if not expr.is_Rational:
                raise StructuralError(f"常数表达式不是有理数: {expr}")
            return cls.constant(Fraction(int(expr.p), int(expr.q)), degrees, cap)

        gens = [sympy.Symbol(n) for n in names]
        poly = sympy.Poly(expr, *gens)
        terms: Dict[Monomial, Fraction] = {}
        for exps, coeff in poly.terms():
            if not coeff.is_Rational:
                raise StructuralError(f"系数不是有理数: {coeff}")
            mono = Monomial.of(zip(names, exps))
            terms[mono] = Fraction(int(coeff.p), int(coeff.q))
        return cls(terms, degrees, cap)


def poly_mul(
    a: GradedPolynomial,
    b: GradedPolynomial,
    cap: Optional[int] = None,
) -> GradedPolynomial:
    """
    精确乘法，丢弃超过截断次数的项

    Args:
        a, b: 乘数
        cap: 额外截断次数；与 a、b 自带的 cap 取最小

    Raises:
        StructuralError: 变量次数表冲突
    """
    degrees = merge_degrees(a.degrees, b.degrees)
    limit = combine_caps(a.cap, b.cap, cap)

    left = [(m, c, m.degree(degrees)) for m, c in a.terms.items()]
    right = [(m, c, m.degree(degrees)) for m, c in b.terms.items()]

    product: Dict[Monomial, Fraction] = {}
    for m1, c1, d1 in left:
        for m2, c2, d2 in right:
            if limit is not None and d1 + d2 > limit:
                continue
            mono = m1 * m2
            product[mono] = product.get(mono, Fraction(0)) + c1 * c2
    return GradedPolynomial(product, degrees, limit)
