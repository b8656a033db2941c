"""
沿正则嵌入子簇的爆破

Ỹ = Bl_X Y 的环由 Y 的生成元加上例外除子类 d 生成，关系为：
1. Y 原有的关系
2. d·(ker ι^* 的生成单项式) = 0
3. d^c = Σ_{i=1..c} (-1)^{i+1}·ã_i·d^{c-i}，ã_i 为 c_i(N) 的提升，ã_c = [X]

例外除子 D = ℙ(N) 的环由 X 的生成元加上 z = c_1(O_{ℙ(N)}(1)) 生成，
O(D)|_D = O_{ℙ(N)}(-1)，所以 j^*d = -z。

    ρ: Ỹ → Y     ρ_*(y·d^k) = ι_*(ι^*y·(-1)^{k-1}·s_{k-c}(N))  (k ≥ 1)
    j: D → Ỹ     j_*(x·z^m) = (-1)^m·d^{m+1}·lift(x)
    ρ̂: D → X     ℙ(N) 的射影丛推出

构造时做全部自检（映射良定义、投影公式、关键恒等式、超量相交），失败抛出
ConstructionError。

使用方式:
    P2 = make_proj_space(2)
    pt = complete_intersection_embedding(P2, [1, 1])
    B = Blowup(pt)
    B.rho_pushforward(B.generator("d") ** 2)    # -H^2
"""

from typing import Any, Dict, List

from src.core.arith import GradedPolynomial, Monomial
from src.core.chow.bundle import Bundle
from src.core.chow.embedding import Embedding, projective_embedding
from src.core.chow.proj_bundle import ProjectiveBundle
from src.core.chow.structure import RingMap, StructureMapSet, inclusion_map
from src.core.chow.variety import RewriteRule, Variety, VarietyKind
from src.core.chow.verification import VerificationReport
from src.core.errors import ConstructionError, DomainError, StructuralError
from src.utils.logger import logger


class Blowup(Variety):
    """
    爆破 Ỹ = Bl_X Y

    Attributes:
        embedding: 中心的嵌入数据 X ⊂ Y
        ambient: Y
        center: X
        exceptional: 例外除子 D = ℙ(N)
    """

    EXCEPTIONAL = "d"
    FIBER = "z"

    def __init__(self, embedding: Embedding):
        Y = embedding.ambient
        X = embedding.sub
        N = embedding.normal
        c = embedding.codimension
        if c < 1:
            raise DomainError(f"爆破中心的余维数必须 ≥ 1: {c}")
        if self.EXCEPTIONAL in Y.degrees:
            raise StructuralError(f"生成元 {self.EXCEPTIONAL} 与 {Y.name} 的生成元重名")

        degrees = dict(Y.degrees)
        degrees[self.EXCEPTIONAL] = 1
        d_mono = Monomial(((self.EXCEPTIONAL, 1),))
        zero = GradedPolynomial.zero(degrees)
        d = GradedPolynomial.variable(self.EXCEPTIONAL, 1, degrees)

        rules = list(Y.rules)
        for mono in embedding.kernel:
            rules.append(RewriteRule(mono * d_mono, zero))

        chern = N.chern_polynomial()
        lifts = {i: embedding.lift(chern[i]) for i in range(1, c)}
        lifts[c] = embedding.fundamental_class
        keel = zero
        for i in range(1, c + 1):
            keel = keel + lifts[i].with_cap(None).with_degrees(degrees) * d ** (c - i) * (-1) ** (i + 1)
        rules.append(RewriteRule(Monomial(((self.EXCEPTIONAL, c),)), keel))

        super().__init__(
            name=f"Bl({Y.name}, {X.name})",
            generators=list(Y.generators) + [(self.EXCEPTIONAL, 1)],
            dimension=Y.dimension,
            rules=rules,
            point_monomial=Y.point_monomial,
            point_value=Y.point_value,
            kind=VarietyKind.BLOWUP,
        )
        self.embedding = embedding
        self.ambient = Y
        self.center = X
        self.codimension = c
        self.normal = N
        self.exceptional = ProjectiveBundle(N, self.FIBER)
        self._segre = N.total_segre()

        D = self.exceptional
        self._rho_pull = inclusion_map(Y, self)
        self._pi_pull = inclusion_map(X, D)
        images = {g: self._pi_pull(embedding.restrict(Y.generator(g))) for g, _ in Y.generators}
        images[self.EXCEPTIONAL] = -D.generator(self.FIBER)
        self._j_pull = RingMap(self, D, images)

        self._self_test()
        logger.info(f"构造爆破: {self.name} c={c} 基维数={len(self.basis())}")

    # ------------------------------------------------------------------
    # 结构映射
    # ------------------------------------------------------------------

    def rho_pullback(self, cls: Any) -> GradedPolynomial:
        """ρ^*: A(Y) → A(Ỹ)"""
        return self._rho_pull(cls)

    def rho_pushforward(self, cls: Any) -> GradedPolynomial:
        """ρ_*: A(Ỹ) → A(Y)"""
        emb = self.embedding
        nf = self.normal_form(cls)
        total = self.ambient.zero()
        for mono, coeff in nf.terms.items():
            k = mono.exponent(self.EXCEPTIONAL)
            y = GradedPolynomial({mono.without(self.EXCEPTIONAL): coeff}, self.ambient.degrees)
            if k == 0:
                total = total + self.ambient.normal_form(y)
                continue
            segre = self._segre.homogeneous_part(k - self.codimension) if k >= self.codimension else None
            if segre is None or segre.is_zero():
                continue
            on_center = self.center.mul(emb.restrict(y), segre) * (-1) ** (k - 1)
            total = total + emb.pushforward(on_center)
        return self.ambient.normal_form(total)

    def j_pullback(self, cls: Any) -> GradedPolynomial:
        """j^*: A(Ỹ) → A(D)"""
        return self._j_pull(cls)

    def j_pushforward(self, cls: Any) -> GradedPolynomial:
        """j_*: A(D) → A(Ỹ)"""
        D = self.exceptional
        nf = D.normal_form(cls)
        d = self.generator(self.EXCEPTIONAL)
        total = self.zero()
        for mono, coeff in nf.terms.items():
            m = mono.exponent(self.FIBER)
            x = GradedPolynomial({mono.without(self.FIBER): coeff}, self.center.degrees)
            lifted = self.coerce(self.embedding.lift(x).with_cap(None))
            total = total + self.mul(lifted, d ** (m + 1)) * (-1) ** m
        return self.normal_form(total)

    def pi_pullback(self, cls: Any) -> GradedPolynomial:
        """π^*: A(X) → A(D)"""
        return self._pi_pull(cls)

    def rho_hat_pushforward(self, cls: Any) -> GradedPolynomial:
        """ρ̂_* = π_*: A(D) → A(X)"""
        return self.exceptional.pushforward(cls)

    def pull_bundle(self, bundle: Bundle) -> Bundle:
        """Y 上的丛拉回到 Ỹ"""
        if bundle.base is not self.ambient:
            raise StructuralError(f"丛不在 {self.ambient.name} 上")
        return bundle.pullback(self, self.rho_pullback)

    def pull_bundle_to_exceptional(self, bundle: Bundle) -> Bundle:
        """Ỹ 上的丛拉回到 D"""
        if bundle.base is not self:
            raise StructuralError(f"丛不在 {self.name} 上")
        return bundle.pullback(self.exceptional, self.j_pullback)

    def structure_maps(self) -> Dict[str, StructureMapSet]:
        return {
            "rho": StructureMapSet(self, self.ambient, self._rho_pull, self.rho_pushforward),
            "j": StructureMapSet(self.exceptional, self, self._j_pull, self.j_pushforward, codimension=1),
            "pi": StructureMapSet(self.exceptional, self.center, self._pi_pull, self.rho_hat_pushforward),
        }

    # ------------------------------------------------------------------
    # 自检
    # ------------------------------------------------------------------

    def excess_intersection_check(self) -> VerificationReport:
        """ρ^*[X] = j_*(c_{c-1}(Q))，Q = π^*N / O_{ℙ(N)}(-1)"""
        D = self.exceptional
        excess = self.normal.pullback(D, self.pi_pullback).quotient_by_line(-D.generator(self.FIBER))
        lhs = self.rho_pullback(self.embedding.fundamental_class)
        rhs = self.j_pushforward(excess.chern_class(self.codimension - 1))
        return VerificationReport.compare("excess_intersection", lhs, rhs, blowup=self.name)

    def key_identity_check(self, gamma: Any) -> VerificationReport:
        """j^*j_*γ = -z·γ"""
        D = self.exceptional
        gamma = D.normal_form(gamma)
        lhs = self.j_pullback(self.j_pushforward(gamma))
        rhs = D.mul(-D.generator(self.FIBER), gamma)
        return VerificationReport.compare("key_identity", lhs, rhs, gamma=gamma)

    def _self_test(self) -> None:
        failures: List[str] = []
        broken = self._j_pull.relation_failures()
        if broken:
            failures.append(f"j^* 不保持关系: {broken}")
        for name, maps in self.structure_maps().items():
            report = maps.check_projection_formula()
            if not report.passed:
                failures.append(f"{name} 投影公式失败: {report.rhs}")
        for x in self.ambient.basis():
            x_cls = GradedPolynomial({x: 1}, self.ambient.degrees)
            if self.rho_pushforward(self.rho_pullback(x_cls)) != self.ambient.normal_form(x_cls):
                failures.append(f"ρ_*ρ^*({x}) ≠ {x}")
        for mono in self.exceptional.basis():
            report = self.key_identity_check(GradedPolynomial({mono: 1}, self.exceptional.degrees))
            if not report.passed:
                failures.append(f"关键恒等式在 {mono} 上失败: {report.lhs} ≠ {report.rhs}")
        excess = self.excess_intersection_check()
        if not excess.passed:
            failures.append(f"超量相交公式失败: {excess.lhs} ≠ {excess.rhs}")
        if failures:
            raise ConstructionError(f"爆破 {self.name} 自检失败: {failures}")

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["center"] = self.center.name
        data["codimension"] = self.codimension
        data["normal"] = self.normal.to_dict()
        return data


def make_blowup(ambient: Variety, center: Variety, gysin_to_center: RingMap, normal: Bundle) -> Blowup:
    """
    沿 X ⊂ Y 爆破

    Args:
        ambient: Y（射影模型）
        center: X（射影模型）
        gysin_to_center: 生成元上的 Gysin 限制 A(Y) → A(X)
        normal: X 上秩 c 的法丛

    Raises:
        ConstructionError: Gysin 或法丛数据不自洽
    """
    embedding = projective_embedding(ambient, center, gysin_to_center, normal)
    return Blowup(embedding)


def blowup_along(embedding: Embedding) -> Blowup:
    return Blowup(embedding)
