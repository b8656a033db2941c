"""
结构映射

- RingMap: 模型环之间的分次环同态，按生成元的像给出（拉回）
- StructureMapSet: 一个态射 f: A → B 的拉回、推出与 Gysin 映射，
  带投影公式自检
"""

from dataclasses import dataclass
from itertools import islice
from typing import Any, Callable, List, Mapping, Optional

from src.core.arith import GradedPolynomial, Monomial
from src.core.chow.variety import Variety
from src.core.chow.verification import VerificationReport, Verdict
from src.core.errors import StructuralError
from src.utils.logger import logger


class RingMap:
    """
    分次环同态 source → target

    Attributes:
        source: 定义域的环
        target: 值域的环
        images: 生成元 → 像（target 中的同次类）
    """

    def __init__(self, source: Variety, target: Variety, images: Mapping[str, Any]):
        missing = [g for g, _ in source.generators if g not in images]
        if missing:
            raise StructuralError(f"环映射缺少生成元的像: {missing}")
        extra = [g for g in images if g not in source.degrees]
        if extra:
            raise StructuralError(f"{source.name} 没有这些生成元: {extra}")

        normalized = {}
        for g, image in images.items():
            image = target.normal_form(image)
            deg = source.degrees[g]
            if any(image.degree_of(m) != deg for m in image.terms):
                raise StructuralError(f"生成元 {g} 的像 {image} 不是 {deg} 次齐次类")
            normalized[g] = image.with_cap(None)

        self.source = source
        self.target = target
        self.images = normalized

    def evaluate(self, poly: GradedPolynomial) -> GradedPolynomial:
        """直接代入生成元的像（不先在定义域中正规化）"""
        image = poly.with_cap(None).substitute(self.images, self.target.dimension)
        return self.target.normal_form(image)

    def apply(self, cls: Any) -> GradedPolynomial:
        return self.evaluate(self.source.normal_form(cls))

    def relation_failures(self) -> List[str]:
        """定义域的每条改写规则两边的像必须相同，否则映射不是良定义的"""
        failures = []
        for rule in self.source.rules:
            lead = GradedPolynomial({rule.lead: 1}, self.source.degrees)
            left = self.evaluate(lead)
            right = self.evaluate(self.source.coerce(rule.replacement))
            if left != right:
                failures.append(f"{rule.lead} → {rule.replacement}: {left} ≠ {right}")
        return failures

    __call__ = apply

    def compose(self, after: "RingMap") -> "RingMap":
        """先 self 再 after"""
        if after.source is not self.target:
            raise StructuralError(f"无法复合: {self.target.name} ≠ {after.source.name}")
        return RingMap(self.source, after.target, {g: after(img) for g, img in self.images.items()})

    def __repr__(self) -> str:
        body = ", ".join(f"{g}↦{img}" for g, img in sorted(self.images.items()))
        return f"RingMap({self.source.name} → {self.target.name}: {body})"


def identity_map(variety: Variety) -> RingMap:
    return RingMap(variety, variety, {g: variety.generator(g) for g, _ in variety.generators})


def inclusion_map(source: Variety, target: Variety) -> RingMap:
    """source 的生成元原样视为 target 的生成元（如 ρ^*: A(Y) → A(Ỹ)）"""
    return RingMap(source, target, {g: target.generator(g) for g, _ in source.generators})


@dataclass
class StructureMapSet:
    """
    态射 f: source → target 的结构映射

    Attributes:
        source: 定义域
        target: 值域
        pullback: f^*，A(target) → A(source)
        pushforward: f_*，A(source) → A(target)
        gysin: 正则嵌入的 Gysin 拉回（非嵌入时为 None）
        codimension: 嵌入余维数（非嵌入时为 None）
    """

    source: Variety
    target: Variety
    pullback: RingMap
    pushforward: Callable[[Any], GradedPolynomial]
    gysin: Optional[Callable[[Any], GradedPolynomial]] = None
    codimension: Optional[int] = None

    def __post_init__(self):
        if self.pullback.source is not self.target or self.pullback.target is not self.source:
            raise StructuralError(
                f"拉回方向不符: 需要 {self.target.name} → {self.source.name}，"
                f"收到 {self.pullback.source.name} → {self.pullback.target.name}"
            )

    def check_projection_formula(self, limit: int = 64) -> VerificationReport:
        """
        在基单项式上检验 f_*(f^*x·y) = x·f_*(y)，以及 f_*f^*x = x·f_*(1)

        limit 限制参与检验的 (x, y) 对数。
        """
        failures: List[str] = []
        pairs = (
            (x, y)
            for x in self.target.basis()
            for y in self.source.basis()
        )
        checked = 0
        for x, y in islice(pairs, limit):
            x_cls = _monomial_class(self.target, x)
            y_cls = _monomial_class(self.source, y)
            left = self.pushforward(self.source.mul(self.pullback(x_cls), y_cls))
            right = self.target.mul(x_cls, self.pushforward(y_cls))
            checked += 1
            if left != right:
                failures.append(f"x={x}, y={y}: {left} ≠ {right}")

        push_one = self.pushforward(self.source.one())
        for x in self.target.basis():
            x_cls = _monomial_class(self.target, x)
            if self.pushforward(self.pullback(x_cls)) != self.target.mul(x_cls, push_one):
                failures.append(f"f_*f^*({x}) ≠ {x}·f_*(1)")

        verdict = Verdict.FAIL if failures else Verdict.PASS
        if failures:
            logger.warning(f"投影公式失败 {self.source.name} → {self.target.name}: {failures[:3]}")
        return VerificationReport(
            identity="projection_formula",
            lhs=f"{checked} pairs",
            rhs="; ".join(failures) or "all equal",
            verdict=verdict,
            details={"source": self.source.name, "target": self.target.name},
        )


def _monomial_class(variety: Variety, mono: Monomial) -> GradedPolynomial:
    return GradedPolynomial({mono: 1}, variety.degrees, variety.dimension)
