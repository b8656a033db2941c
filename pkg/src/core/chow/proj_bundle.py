"""
射影丛与二次曲面丛

- make_proj_bundle(E): ℙ(E)（线的射影化），生成元 h = c_1(O(1))，
  Grothendieck 关系 h^r + c_1(E)h^{r-1} + … + c_r(E) = 0
- proj_bundle_pushforward(E, k): p_*(h^k) = s_{k-r+1}(E)
- quadric_pushforward(F, cls): 二次曲面丛 Q ⊂ ℙ(F) 的推出，先乘以 Q 的除子类 2h
"""

from fractions import Fraction
from typing import Any, Dict, Sequence

from src.core.arith import GradedPolynomial, Monomial
from src.core.chow.bundle import Bundle
from src.core.chow.variety import RewriteRule, Variety, VarietyKind
from src.core.chow.verification import VerificationReport
from src.core.errors import DomainError, StructuralError
from src.utils.logger import logger


class ProjectiveBundle(Variety):
    """
    射影丛 ℙ(E) → B

    Attributes:
        base: 底簇 B
        bundle: 向量丛 E
        fiber_generator: O(1) 的第一陈类的变量名
    """

    def __init__(self, bundle: Bundle, generator: str = "h"):
        base = bundle.base
        r = bundle.rank
        if r < 1:
            raise DomainError(f"射影丛要求秩 ≥ 1: rank={r}")
        if generator in base.degrees:
            raise StructuralError(f"生成元 {generator} 与底簇 {base.name} 的生成元重名")

        degrees = dict(base.degrees)
        degrees[generator] = 1
        chern = bundle.chern_polynomial()
        # h^r → -Σ_{i≥1} c_i(E)·h^{r-i}
        replacement = GradedPolynomial.zero(degrees)
        h = GradedPolynomial.variable(generator, 1, degrees)
        for i in range(1, r + 1):
            replacement = replacement - chern[i].with_cap(None) * h ** (r - i)
        rules = list(base.rules) + [RewriteRule(Monomial(((generator, r),)), replacement)]

        super().__init__(
            name=f"P({bundle!r})",
            generators=list(base.generators) + [(generator, 1)],
            dimension=base.dimension + r - 1,
            rules=rules,
            point_monomial=base.point_monomial * Monomial(((generator, r - 1),)) if r > 1 else base.point_monomial,
            point_value=base.point_value,
            kind=VarietyKind.PROJ_BUNDLE,
        )
        self.base = base
        self.bundle = bundle
        self.fiber_generator = generator
        self._segre = bundle.total_segre()

    def pullback(self, cls: Any) -> GradedPolynomial:
        """p^*：底簇的类直接视为本环的类"""
        return self.normal_form(self.base.normal_form(cls))

    def pushforward(self, cls: Any) -> GradedPolynomial:
        """p_*(y·h^k) = y·s_{k-r+1}(E)"""
        g = self.fiber_generator
        r = self.bundle.rank
        poly = self.normal_form(cls)
        total = self.base.zero()
        for mono, coeff in poly.terms.items():
            k = mono.exponent(g)
            j = k - r + 1
            if j < 0:
                continue
            y = GradedPolynomial({mono.without(g): coeff}, self.base.degrees, self.base.dimension)
            total = total + y * self._segre.homogeneous_part(j)
        return self.base.normal_form(total)

    def integrate(self, cls: Any) -> Fraction:
        return self.base.integrate(self.pushforward(cls))

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["bundle"] = self.bundle.to_dict()
        return data


def make_proj_bundle(E: Bundle, generator: str = "h") -> ProjectiveBundle:
    """构造 ℙ(E)"""
    variety = ProjectiveBundle(E, generator)
    logger.debug(f"构造射影丛: {variety.name} dim={variety.dimension}")
    return variety


def proj_bundle_pushforward(E: Bundle, k: int) -> GradedPolynomial:
    """
    p_*(h^k) = s_{k-r+1}(E)

    s_j = 0 (j < 0)，s_0 = 1，s(E) = 1/c(E)

    Example:
        底 P^1，E = O ⊕ O(-1)，k = 2 → H
    """
    if not isinstance(k, int) or k < 0:
        raise DomainError(f"h 的幂次必须是非负整数: {k!r}")
    return E.segre_class(k - E.rank + 1)


def _check_quadric_rank(F: Bundle) -> None:
    if F.rank < 2 or F.rank % 2:
        raise DomainError(f"二次曲面丛要求偶数秩 ≥ 2: rank={F.rank}")


def _push_from_quadric(PF: ProjectiveBundle, cls: Any) -> GradedPolynomial:
    """Q 的除子类是 2h"""
    h = PF.generator(PF.fiber_generator)
    return PF.pushforward(PF.mul(cls, h, 2))


def quadric_pushforward(F: Bundle, cls: Any, generator: str = "h") -> GradedPolynomial:
    """
    二次曲面丛 Q ⊂ ℙ(F) 上的类推出到底簇

    Q 是 O(2) 的截面的零点集，先推入 ℙ(F)（乘以 2h），再做射影丛推出。

    Args:
        F: 偶数秩 2n ≥ 2 的丛
        cls: 关于 h 与底簇生成元的多项式

    Raises:
        DomainError: 秩为奇数或为0
    """
    _check_quadric_rank(F)
    return _push_from_quadric(make_proj_bundle(F, generator), cls)


def quadric_fiber_class(F: Bundle, generator: str = "h") -> GradedPolynomial:
    """h^{2n-2}/2：在每根纤维上积分为1的类"""
    PF = make_proj_bundle(F, generator)
    return PF.normal_form(PF.generator(generator) ** (F.rank - 2) * Fraction(1, 2))


def _quadric_step(F: Bundle, xi: Any, generator: str) -> GradedPolynomial:
    """p_*(h^{2n-2}/2 · p^*ξ)，纤维类与 p^*ξ 都在同一个 ℙ(F) 里相乘"""
    _check_quadric_rank(F)
    PF = make_proj_bundle(F, generator)
    fiber = PF.generator(generator) ** (F.rank - 2) * Fraction(1, 2)
    return _push_from_quadric(PF, PF.mul(fiber, PF.pullback(xi)))


def verify_quadric_identity(F: Bundle, xi: Any, generator: str = "h") -> VerificationReport:
    """p_*(h^{2n-2}/2 · p^*ξ) = ξ"""
    xi = F.base.normal_form(xi)
    pushed = _quadric_step(F, xi, generator)
    return VerificationReport.compare(
        "quadric_pushforward", pushed, xi, bundle=repr(F), xi=xi
    )


def verify_quadric_tower(bundles: Sequence[Bundle], xi: Any, generator: str = "h") -> VerificationReport:
    """
    二次曲面丛塔的复合推出，逐层用单步恒等式验证

    bundles 从塔顶到塔底排列；每一层把 h^{rank-2}/2 推下去。
    完整的塔的环没有表示，复合恒等式只通过逐层的单步恒等式验证。
    """
    if not bundles:
        raise DomainError("二次曲面丛塔至少需要一层")
    base = bundles[0].base
    if any(b.base is not base for b in bundles):
        raise StructuralError("塔的各层丛必须给在同一底簇上")
    current = base.normal_form(xi)
    for F in bundles:
        current = _quadric_step(F, current, generator)
    return VerificationReport.compare(
        "quadric_tower", current, base.normal_form(xi), levels=len(bundles)
    )
