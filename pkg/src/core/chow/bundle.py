"""
分裂向量丛

Bundle 用陈根的形式多重集表示向量丛（分裂原理）。为了表示 V/L 这类商丛，
额外允许一组"商根"：c_t(V/L) = c_t(V) / (1 + c_1(L)·t)，按 t 的多项式精确相除。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Sequence, Tuple

from src.core.arith import GradedPolynomial, series_inverse
from src.core.chow.variety import ProjectiveModel, Variety
from src.core.errors import DomainError, StructuralError


@dataclass(frozen=True)
class Bundle:
    """
    分裂向量丛

    Attributes:
        base: 底簇
        roots: 陈根（1次类）
        quotient_roots: 被商掉的线丛的陈根
    """

    base: Variety
    roots: Tuple[GradedPolynomial, ...]
    quotient_roots: Tuple[GradedPolynomial, ...] = ()

    def __post_init__(self):
        for root in tuple(self.roots) + tuple(self.quotient_roots):
            if not isinstance(root, GradedPolynomial):
                raise StructuralError(f"陈根必须是 GradedPolynomial: {root!r}")
            if any(self.base.degrees.get(v) is None for v in root.variables()):
                raise StructuralError(f"陈根 {root} 含 {self.base.name} 之外的变量")
            if any(root.degree_of(m) != 1 for m in root.terms):
                raise DomainError(f"陈根必须是1次齐次类: {root}")
        if len(self.quotient_roots) > len(self.roots):
            raise DomainError("商根个数超过陈根个数，秩为负")
        object.__setattr__(self, "roots", tuple(self.base.normal_form(r) for r in self.roots))
        object.__setattr__(
            self, "quotient_roots", tuple(self.base.normal_form(r) for r in self.quotient_roots)
        )

    # ------------------------------------------------------------------
    # 构造
    # ------------------------------------------------------------------

    @classmethod
    def split(cls, base: ProjectiveModel, twists: Sequence[int]) -> "Bundle":
        """射影模型上的 ⊕O(a_i)"""
        if not isinstance(base, ProjectiveModel):
            raise StructuralError(f"O(a) 只在射影模型上有定义: {base.name}")
        H = base.hyperplane()
        return cls(base, tuple(H * a for a in twists))

    @classmethod
    def trivial(cls, base: Variety, rank: int) -> "Bundle":
        return cls(base, tuple(base.zero() for _ in range(rank)))

    # ------------------------------------------------------------------
    # 陈类
    # ------------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.roots) - len(self.quotient_roots)

    def chern_polynomial(self) -> List[GradedPolynomial]:
        """c_0..c_rank（c_t 的系数）"""
        base = self.base
        coeffs = [base.one()]
        for root in self.roots:
            shifted = coeffs + [base.zero()]
            for k in range(len(coeffs), 0, -1):
                shifted[k] = base.normal_form(shifted[k] + root * coeffs[k - 1])
            coeffs = shifted
        for q in self.quotient_roots:
            divided = [coeffs[0]]
            for k in range(1, len(coeffs) - 1):
                divided.append(base.normal_form(coeffs[k] - q * divided[k - 1]))
            coeffs = divided
        return coeffs[: self.rank + 1]

    def chern_class(self, k: int) -> GradedPolynomial:
        if k < 0 or k > self.rank:
            return self.base.zero()
        return self.chern_polynomial()[k]

    def total_chern(self) -> GradedPolynomial:
        total = self.base.zero()
        for c in self.chern_polynomial():
            total = total + c
        return total

    def euler(self) -> GradedPolynomial:
        """欧拉类 e(V) = c_rank(V)"""
        return self.chern_class(self.rank)

    def total_segre(self) -> GradedPolynomial:
        """s(V) = 1/c(V)，截断到底簇维数"""
        return self.base.normal_form(series_inverse(self.total_chern(), self.base.dimension))

    def segre_class(self, k: int) -> GradedPolynomial:
        if k < 0:
            return self.base.zero()
        return self.total_segre().homogeneous_part(k)

    # ------------------------------------------------------------------
    # 运算
    # ------------------------------------------------------------------

    def dual(self) -> "Bundle":
        return Bundle(self.base, tuple(-r for r in self.roots), tuple(-q for q in self.quotient_roots))

    def direct_sum(self, other: "Bundle") -> "Bundle":
        if other.base is not self.base:
            raise StructuralError(f"直和要求同一底簇: {self.base.name} vs {other.base.name}")
        return Bundle(self.base, self.roots + other.roots, self.quotient_roots + other.quotient_roots)

    def __add__(self, other: "Bundle") -> "Bundle":
        return self.direct_sum(other)

    def sub_bundle(self, indices: Sequence[int]) -> "Bundle":
        """按陈根下标取出子直和项（要求无商根）"""
        if self.quotient_roots:
            raise DomainError("带商根的丛不能按陈根下标取子丛")
        self._check_indices(indices)
        return Bundle(self.base, tuple(self.roots[i] for i in indices))

    def complement(self, indices: Sequence[int]) -> "Bundle":
        """去掉给定下标的陈根后的直和项（商根保留）"""
        self._check_indices(indices)
        drop = set(indices)
        return Bundle(
            self.base,
            tuple(r for i, r in enumerate(self.roots) if i not in drop),
            self.quotient_roots,
        )

    def quotient_by_line(self, root: GradedPolynomial) -> "Bundle":
        """V / L，L 的陈根为 root"""
        return Bundle(self.base, self.roots, self.quotient_roots + (root,))

    def pullback(self, target: Variety, pull: Callable[[GradedPolynomial], GradedPolynomial]) -> "Bundle":
        """沿环映射 pull 拉回到 target"""
        return Bundle(
            target,
            tuple(pull(r) for r in self.roots),
            tuple(pull(q) for q in self.quotient_roots),
        )

    def _check_indices(self, indices: Sequence[int]) -> None:
        if len(set(indices)) != len(indices):
            raise DomainError(f"陈根下标重复: {list(indices)}")
        for i in indices:
            if not isinstance(i, int) or i < 0 or i >= len(self.roots):
                raise DomainError(f"陈根下标越界: {i}（共 {len(self.roots)} 个）")

    def root_twists(self) -> List[Fraction]:
        """射影模型上每个陈根关于 H 的系数"""
        if not isinstance(self.base, ProjectiveModel):
            raise StructuralError(f"{self.base.name} 不是射影模型")
        h = self.base.HYPERPLANE
        return [r.coefficient({h: 1}) for r in self.roots]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base": self.base.name,
            "rank": self.rank,
            "roots": [str(r) for r in self.roots],
            "quotient_roots": [str(q) for q in self.quotient_roots],
        }

    def __repr__(self) -> str:
        body = " + ".join(f"[{r}]" for r in self.roots) or "0"
        if self.quotient_roots:
            body += " - " + " - ".join(f"[{q}]" for q in self.quotient_roots)
        return f"Bundle({body} on {self.base.name})"
