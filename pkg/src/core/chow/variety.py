"""
模型 Chow 环

Variety 是一个有限表示的分次环：生成元及其次数、一组改写规则
（首项单项式 → 正规形式）、维数和积分泛函。每种构造器自带一套终止且合流的
改写规则，不需要一般的 Gröbner 基。

支持的构造器：
- make_point(): 点
- make_proj_space(n): ℚ[H]/(H^{n+1})
- make_complete_intersection(m, degrees): P^m 中给定次数的光滑完全交，
  用限制的超平面类表示：ℚ[H]/(H^{k+1})，∫H^k = ∏degrees
- 射影丛与爆破见 proj_bundle.py、blowup.py

使用方式:
    P4 = make_proj_space(4)
    H = P4.generator("H")
    P4.integrate(4 * H**4)   # Fraction(4)
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy

from src.core.arith import GradedPolynomial, Monomial, ONE, merge_degrees, to_fraction
from src.core.errors import DomainError, StructuralError
from src.utils.logger import logger


class VarietyKind:
    """簇的构造类型"""

    POINT = "point"
    PROJ_SPACE = "proj_space"
    COMPLETE_INTERSECTION = "complete_intersection"
    PROJ_BUNDLE = "proj_bundle"
    BLOWUP = "blowup"

    # 截面模型能直接给出零点集的底空间
    PROJECTIVE_MODELS = (POINT, PROJ_SPACE, COMPLETE_INTERSECTION)


@dataclass(frozen=True)
class RewriteRule:
    """
    改写规则：lead → replacement

    Attributes:
        lead: 首项单项式
        replacement: 正规形式（可以为零）
    """

    lead: Monomial
    replacement: GradedPolynomial

    def to_dict(self) -> Dict[str, str]:
        return {"lead": str(self.lead), "replacement": str(self.replacement)}


class Variety:
    """
    模型 Chow 环

    Attributes:
        name: 名称，如 "P(4)"
        generators: [(变量, 次数), ...]
        dimension: 维数
        rules: 改写规则
        point_monomial: 顶次正规单项式
        point_value: ∫ point_monomial
        kind: 构造类型（VarietyKind）
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[Tuple[str, int]],
        dimension: int,
        rules: Sequence[RewriteRule],
        point_monomial: Monomial,
        point_value: Any = 1,
        kind: str = VarietyKind.PROJ_SPACE,
    ):
        if dimension < 0:
            raise DomainError(f"维数必须非负: {dimension}")
        names = [g for g, _ in generators]
        if len(set(names)) != len(names):
            raise StructuralError(f"生成元重名: {names}")
        for g, deg in generators:
            if deg < 1:
                raise StructuralError(f"生成元次数必须为正: {g}={deg}")

        self.name = name
        self.generators: Tuple[Tuple[str, int], ...] = tuple(generators)
        self.degrees: Dict[str, int] = dict(generators)
        self.dimension = dimension
        self.rules: Tuple[RewriteRule, ...] = tuple(rules)
        self.point_monomial = point_monomial
        self.point_value = to_fraction(point_value)
        self.kind = kind
        self._cache: Dict[Monomial, GradedPolynomial] = {}

        if self.point_value == 0:
            raise DomainError(f"{name} 的点类积分不能为0")

    # ------------------------------------------------------------------
    # 基本元素
    # ------------------------------------------------------------------

    def generator(self, name: str) -> GradedPolynomial:
        if name not in self.degrees:
            raise StructuralError(f"{self.name} 没有生成元 {name}")
        return GradedPolynomial.variable(name, self.degrees[name], self.degrees, self.dimension)

    def one(self) -> GradedPolynomial:
        return GradedPolynomial.constant(1, self.degrees, self.dimension)

    def zero(self) -> GradedPolynomial:
        return GradedPolynomial.zero(self.degrees, self.dimension)

    def constant(self, value: Any) -> GradedPolynomial:
        return GradedPolynomial.constant(to_fraction(value), self.degrees, self.dimension)

    def point_class(self) -> GradedPolynomial:
        """点的类：积分为1"""
        return GradedPolynomial({self.point_monomial: 1 / self.point_value}, self.degrees, self.dimension)

    # ------------------------------------------------------------------
    # 正规形式
    # ------------------------------------------------------------------

    def coerce(self, cls: Any) -> GradedPolynomial:
        """把有理数或多项式放进本环（检查变量归属，截断到维数）"""
        if not isinstance(cls, GradedPolynomial):
            return self.constant(cls)
        stray = [v for v in cls.variables() if v not in self.degrees]
        if stray:
            raise StructuralError(f"类含 {self.name} 之外的变量: {stray}")
        table = merge_degrees(
            {v: d for v, d in cls.degrees.items() if v in self.degrees},
            self.degrees,
        )
        return GradedPolynomial(cls.terms, table, self.dimension)

    def _reduce_monomial(self, mono: Monomial) -> GradedPolynomial:
        cached = self._cache.get(mono)
        if cached is not None:
            return cached
        if mono.degree(self.degrees) > self.dimension:
            result = self.zero()
        else:
            result = None
            for rule in self.rules:
                if rule.lead.divides(mono):
                    rest = GradedPolynomial({mono.quotient(rule.lead): 1}, self.degrees, self.dimension)
                    result = self._reduce_poly(rest * self.coerce(rule.replacement))
                    break
            if result is None:
                result = GradedPolynomial({mono: 1}, self.degrees, self.dimension)
        self._cache[mono] = result
        return result

    def _reduce_poly(self, poly: GradedPolynomial) -> GradedPolynomial:
        total: Dict[Monomial, Fraction] = {}
        for mono, coeff in poly.terms.items():
            for m, c in self._reduce_monomial(mono).terms.items():
                total[m] = total.get(m, Fraction(0)) + coeff * c
        return GradedPolynomial(total, self.degrees, self.dimension)

    def normal_form(self, cls: Any) -> GradedPolynomial:
        """
        正规形式

        Raises:
            StructuralError: 类含本环之外的变量
        """
        return self._reduce_poly(self.coerce(cls))

    def mul(self, *factors: Any) -> GradedPolynomial:
        result = self.one()
        for f in factors:
            result = self.normal_form(result * self.coerce(f))
        return result

    def is_normal(self, mono: Monomial) -> bool:
        return mono.degree(self.degrees) <= self.dimension and not any(
            r.lead.divides(mono) for r in self.rules
        )

    def basis(self) -> List[Monomial]:
        """正规单项式基（按规范序）"""
        ranges = [range(self.dimension // deg + 1) for _, deg in self.generators]
        names = [g for g, _ in self.generators]
        found = []
        for exps in product(*ranges):
            mono = Monomial.of(zip(names, exps))
            if self.is_normal(mono):
                found.append(mono)
        return sorted(found, key=lambda m: (m.degree(self.degrees), m))

    # ------------------------------------------------------------------
    # 积分
    # ------------------------------------------------------------------

    def integrate(self, cls: Any) -> Fraction:
        """正规化后顶次点类的系数（乘以点类积分值）"""
        nf = self.normal_form(cls)
        top = nf.homogeneous_part(self.dimension)
        stray = [m for m in top.terms if m != self.point_monomial]
        if stray:
            raise StructuralError(f"{self.name} 的顶次正规形式含非点类单项式: {stray}")
        return nf.coefficient(self.point_monomial) * self.point_value

    def solve_linear(
        self,
        images: Sequence[GradedPolynomial],
        target: GradedPolynomial,
    ) -> Optional[List[Fraction]]:
        """
        在本环中求解 Σ x_i·images[i] = target（精确有理线性代数）

        Returns:
            系数列表；无解时返回 None
        """
        rows = sorted(
            {m for img in images for m in img.terms} | set(target.terms),
            key=lambda m: (m.degree(self.degrees), m),
        )
        if not images:
            return [] if target.is_zero() else None
        if not rows:
            return [Fraction(0)] * len(images)
        matrix = sympy.Matrix(
            [[_as_rational(img.coefficient(m)) for img in images] for m in rows]
        )
        rhs = sympy.Matrix([_as_rational(target.coefficient(m)) for m in rows])
        try:
            solution, params = matrix.gauss_jordan_solve(rhs)
        except ValueError:
            return None
        solution = solution.subs({p: 0 for p in params})
        return [Fraction(int(v.p), int(v.q)) for v in solution]

    # ------------------------------------------------------------------
    # 序列化
    # ------------------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind,
            "dimension": self.dimension,
            "generators": [[g, d] for g, d in self.generators],
            "relations": [r.to_dict() for r in self.rules],
            "point_monomial": str(self.point_monomial),
            "point_value": str(self.point_value),
        }

    def __repr__(self) -> str:
        return f"Variety({self.name}, dim={self.dimension})"


def _as_rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


class ProjectiveModel(Variety):
    """
    射影空间中的光滑完全交（含射影空间本身与点）

    Attributes:
        ambient_dim: 所在射影空间 P^m 的维数
        ci_degrees: 定义方程的次数（不含1次方程）
    """

    HYPERPLANE = "H"

    def __init__(self, ambient_dim: int, ci_degrees: Sequence[int]):
        ci_degrees = tuple(sorted(ci_degrees))
        dimension = ambient_dim - len(ci_degrees)
        if not ci_degrees:
            name = f"P({ambient_dim})"
            kind = VarietyKind.POINT if ambient_dim == 0 else VarietyKind.PROJ_SPACE
        else:
            name = f"CI({ambient_dim}; {', '.join(str(d) for d in ci_degrees)})"
            kind = VarietyKind.COMPLETE_INTERSECTION

        h = self.HYPERPLANE
        rule = RewriteRule(
            Monomial(((h, dimension + 1),)),
            GradedPolynomial.zero({h: 1}),
        )
        super().__init__(
            name=name,
            generators=[(h, 1)],
            dimension=dimension,
            rules=[rule],
            point_monomial=Monomial(((h, dimension),)) if dimension else ONE,
            point_value=prod(ci_degrees) if ci_degrees else 1,
            kind=kind,
        )
        self.ambient_dim = ambient_dim
        self.ci_degrees = ci_degrees

    def hyperplane(self) -> GradedPolynomial:
        return self.generator(self.HYPERPLANE)


def make_point() -> ProjectiveModel:
    return ProjectiveModel(0, ())


def make_proj_space(n: int) -> ProjectiveModel:
    """
    射影空间 P^n：ℚ[H]/(H^{n+1})，∫H^n = 1

    Raises:
        DomainError: n < 0
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"射影空间维数必须是非负整数: {n!r}")
    variety = ProjectiveModel(n, ())
    logger.debug(f"构造射影空间: {variety.name}")
    return variety


def make_complete_intersection(ambient_dim: int, degrees: Sequence[int]) -> ProjectiveModel:
    """
    P^m 中次数为 degrees 的光滑完全交

    1次方程直接降低所在射影空间的维数，所以 CI(4; 1, 1) 就是 P(2)。

    Raises:
        DomainError: 次数非正，或方程个数超过维数
    """
    if not isinstance(ambient_dim, int) or ambient_dim < 0:
        raise DomainError(f"射影空间维数必须是非负整数: {ambient_dim!r}")
    for d in degrees:
        if not isinstance(d, int) or d < 1:
            raise DomainError(f"完全交的次数必须是正整数: {d!r}")
    if len(degrees) > ambient_dim:
        raise DomainError(f"方程个数 {len(degrees)} 超过维数 {ambient_dim}，零点集为空")
    linear = sum(1 for d in degrees if d == 1)
    variety = ProjectiveModel(ambient_dim - linear, [d for d in degrees if d > 1])
    logger.debug(f"构造完全交: {variety.name} dim={variety.dimension}")
    return variety


def integrate(variety: Variety, cls: Any) -> Fraction:
    """∫_Y cls"""
    return variety.integrate(cls)
