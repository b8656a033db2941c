"""
正则嵌入 ι: X → Y

Embedding 保存模型族中子簇的全部数据：限制映射 ι^*、基本类 [X]、
限制映射在生成元上的提升、ι^* 的核（单项式生成）、法丛 N。

ι_* 由投影公式给出：ι_*(x) = lift(x)·[X]。它在模型族里是单射，
因此 A(X∩Z) 上的类可以通过在 ι_* 下求原像落地。
"""

from math import prod
from typing import Any, List, Sequence

from src.core.arith import GradedPolynomial, Monomial
from src.core.chow.bundle import Bundle
from src.core.chow.structure import RingMap, StructureMapSet
from src.core.chow.variety import ProjectiveModel, Variety, make_complete_intersection
from src.core.errors import ConstructionError, DomainError, StructuralError
from src.utils.logger import logger


class Embedding:
    """
    子簇 X ⊂ Y 的嵌入数据

    Attributes:
        ambient: Y
        sub: X
        restriction: ι^*: A(Y) → A(X)
        lift: 生成元层面 ι^* 的截面 A(X) → A(Y)
        fundamental_class: [X] ∈ A(Y)
        kernel: 生成 ker ι^* 的单项式
        normal: 法丛 N_{X/Y}
        codimension: 余维数
    """

    def __init__(
        self,
        ambient: Variety,
        sub: Variety,
        restriction: RingMap,
        lift: RingMap,
        fundamental_class: Any,
        kernel: Sequence[Monomial],
        normal: Bundle,
    ):
        if restriction.source is not ambient or restriction.target is not sub:
            raise StructuralError("限制映射必须是 A(Y) → A(X)")
        if lift.source is not sub or lift.target is not ambient:
            raise StructuralError("提升映射必须是 A(X) → A(Y)")
        if normal.base is not sub:
            raise StructuralError(f"法丛必须给在 {sub.name} 上")

        self.ambient = ambient
        self.sub = sub
        self.restriction = restriction
        self.lift = lift
        self.fundamental_class = ambient.normal_form(fundamental_class)
        self.kernel = tuple(kernel)
        self.normal = normal
        self.codimension = ambient.dimension - sub.dimension

        self._self_test()

    def _self_test(self) -> None:
        c = self.codimension
        if self.normal.rank != c:
            raise ConstructionError(f"法丛秩 {self.normal.rank} 与余维数 {c} 不一致")
        restricted = self.restriction(self.fundamental_class)
        if restricted != self.normal.chern_class(c):
            raise ConstructionError(
                f"ι^*[X] = {restricted} 与 c_{c}(N) = {self.normal.chern_class(c)} 不一致"
            )
        for mono in self.kernel:
            image = self.restriction(GradedPolynomial({mono: 1}, self.ambient.degrees))
            if not image.is_zero():
                raise ConstructionError(f"核单项式 {mono} 的限制不为0: {image}")
        broken = self.restriction.relation_failures()
        if broken:
            raise ConstructionError(f"限制映射与 {self.ambient.name} 的关系不相容: {broken}")
        for x in self.sub.basis():
            if x.degree(self.sub.degrees) != self.sub.dimension:
                continue
            x_cls = GradedPolynomial({x: 1}, self.sub.degrees)
            if self.sub.integrate(x_cls) != self.ambient.integrate(self.pushforward(x_cls)):
                raise ConstructionError(f"∫_X {x} 与 ∫_Y ι_*({x}) 不一致，法丛或基本类有误")
        for g, _ in self.sub.generators:
            back = self.restriction(self.lift(self.sub.generator(g)))
            if back != self.sub.generator(g):
                raise ConstructionError(f"ι^*∘lift 在生成元 {g} 上不是恒等: {back}")
        report = self.structure_maps().check_projection_formula()
        if not report.passed:
            raise ConstructionError(f"嵌入 {self.sub.name} ⊂ {self.ambient.name} 投影公式失败: {report.rhs}")

    # ------------------------------------------------------------------
    # 映射
    # ------------------------------------------------------------------

    def restrict(self, cls: Any) -> GradedPolynomial:
        """ι^*（光滑模型上即 Gysin 拉回 ι^!）"""
        return self.restriction(cls)

    def pushforward(self, cls: Any) -> GradedPolynomial:
        """ι_*(x) = lift(x)·[X]"""
        return self.ambient.mul(self.lift(cls), self.fundamental_class)

    def preimage(self, cls: Any) -> GradedPolynomial:
        """
        ι_* 下的原像

        Raises:
            DomainError: 类不在 ι_* 的像中
        """
        target = self.ambient.normal_form(cls)
        basis = self.sub.basis()
        images = [self.pushforward(GradedPolynomial({m: 1}, self.sub.degrees)) for m in basis]
        solution = self.ambient.solve_linear(images, target)
        if solution is None:
            raise DomainError(f"{target} 不在 ι_*: A({self.sub.name}) → A({self.ambient.name}) 的像中")
        return self.sub.normal_form(
            GradedPolynomial(dict(zip(basis, solution)), self.sub.degrees)
        )

    def structure_maps(self) -> StructureMapSet:
        return StructureMapSet(
            source=self.sub,
            target=self.ambient,
            pullback=self.restriction,
            pushforward=self.pushforward,
            gysin=self.restrict,
            codimension=self.codimension,
        )

    def __repr__(self) -> str:
        return f"Embedding({self.sub.name} ⊂ {self.ambient.name}, codim={self.codimension})"


def complete_intersection_embedding(ambient: ProjectiveModel, degrees: Sequence[int]) -> Embedding:
    """
    射影模型中由 ⊕O(a_i) 的正则截面切出的完全交

    [X] = ∏a_i·H^c，N = ⊕O(a_i)|_X；degrees 为空时 X = Y。

    Raises:
        DomainError: 次数非正，或方程个数超过维数
    """
    if not isinstance(ambient, ProjectiveModel):
        raise StructuralError(f"完全交嵌入要求射影模型: {ambient.name}")
    degrees = list(degrees)
    for a in degrees:
        if not isinstance(a, int) or a < 1:
            raise DomainError(f"正则截面的次数必须是正整数: {a!r}")
    if len(degrees) > ambient.dimension:
        raise DomainError(f"{len(degrees)} 个方程超过 {ambient.name} 的维数，零点集为空")

    sub = ambient if not degrees else make_complete_intersection(
        ambient.ambient_dim, list(ambient.ci_degrees) + degrees
    )
    h = ProjectiveModel.HYPERPLANE
    c = len(degrees)
    restriction = RingMap(ambient, sub, {h: sub.hyperplane()})
    lift = RingMap(sub, ambient, {h: ambient.hyperplane()})
    fundamental = ambient.hyperplane() ** c * prod(degrees)
    kernel: List[Monomial] = []
    if sub.dimension + 1 <= ambient.dimension:
        kernel.append(Monomial(((h, sub.dimension + 1),)))
    normal = Bundle.split(sub, degrees)

    embedding = Embedding(ambient, sub, restriction, lift, fundamental, kernel, normal)
    logger.debug(f"构造嵌入: {embedding}")
    return embedding


def linear_subspace_embedding(ambient: ProjectiveModel, k: int) -> Embedding:
    """P(k) ⊂ P(n)（n-k 个线性方程）"""
    if not isinstance(k, int) or k < 0 or k > ambient.dimension:
        raise DomainError(f"线性子空间维数必须在 0..{ambient.dimension}: {k!r}")
    return complete_intersection_embedding(ambient, [1] * (ambient.dimension - k))


def projective_embedding(
    ambient: ProjectiveModel,
    sub: ProjectiveModel,
    restriction: RingMap,
    normal: Bundle,
) -> Embedding:
    """
    由限制映射与法丛补全射影模型间的嵌入数据

    lift 取 H ↦ H，[X] = lift(c_c(N))，核由 H^{dim X + 1} 生成。
    数据不自洽时由 Embedding 的自检抛出 ConstructionError。
    """
    if not isinstance(ambient, ProjectiveModel) or not isinstance(sub, ProjectiveModel):
        raise StructuralError(f"只能补全射影模型之间的嵌入: {sub.name} ⊂ {ambient.name}")
    h = ProjectiveModel.HYPERPLANE
    lift = RingMap(sub, ambient, {h: ambient.hyperplane()})
    c = ambient.dimension - sub.dimension
    kernel = [Monomial(((h, sub.dimension + 1),))] if c > 0 else []
    fundamental = lift(normal.chern_class(c)) if c > 0 else ambient.one()
    return Embedding(ambient, sub, restriction, lift, fundamental, kernel, normal)
