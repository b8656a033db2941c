"""
双曲正交丛

F = V ⊕ V∨ 带求值配对，V 是指定的正极大迷向子丛，orientation_sign 为定向符号。

    √e(F) = sign·e(V)
    √e(F)² = (-1)^n·e(V)·e(V∨) = (-1)^n·e(F)

迷向子丛 K 由 V 的直和项（下标）与 V∨ 的直和项（dual 下标）组成，同一下标
不能两边都出现。K⊥/K 仍是双曲的，正部分为去掉这些下标后的 V，定向乘以
(-1)^{#dual}（把 V∨ 的线换成 V 的线改变极大迷向子丛的族）。
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Sequence, Tuple

from src.core.arith import GradedPolynomial
from src.core.chow import Bundle, DUAL, POSITIVE, Variety, normalize_labels
from src.core.errors import DomainError, StructuralError


@dataclass(frozen=True)
class OrthBundle:
    """
    双曲正交丛 V ⊕ V∨

    Attributes:
        positive_part: V
        orientation_sign: +1 / -1
    """

    positive_part: Bundle
    orientation_sign: int = 1

    def __post_init__(self):
        if self.orientation_sign not in (1, -1):
            raise DomainError(f"定向符号必须是 ±1: {self.orientation_sign!r}")

    @property
    def base(self) -> Variety:
        return self.positive_part.base

    @property
    def half_rank(self) -> int:
        return self.positive_part.rank

    @property
    def rank(self) -> int:
        return 2 * self.half_rank

    def underlying(self) -> Bundle:
        """V ⊕ V∨"""
        return self.positive_part + self.positive_part.dual()

    def flip(self) -> "OrthBundle":
        return OrthBundle(self.positive_part, -self.orientation_sign)

    def direct_sum(self, other: "OrthBundle") -> "OrthBundle":
        """定向符号相乘"""
        return OrthBundle(
            self.positive_part + other.positive_part,
            self.orientation_sign * other.orientation_sign,
        )

    def __add__(self, other: "OrthBundle") -> "OrthBundle":
        return self.direct_sum(other)

    def pullback(self, target: Variety, pull: Callable[[GradedPolynomial], GradedPolynomial]) -> "OrthBundle":
        return OrthBundle(self.positive_part.pullback(target, pull), self.orientation_sign)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base": self.base.name,
            "rank": self.rank,
            "positive_part": self.positive_part.to_dict(),
            "orientation_sign": self.orientation_sign,
        }

    def __repr__(self) -> str:
        sign = "" if self.orientation_sign == 1 else ", -1"
        return f"hyperbolic({self.positive_part!r}{sign})"


def hyperbolic(V: Bundle, sign: int = 1) -> OrthBundle:
    return OrthBundle(V, sign)


def direct_sum(F: OrthBundle, G: OrthBundle) -> OrthBundle:
    return F.direct_sum(G)


def flip(F: OrthBundle) -> OrthBundle:
    return F.flip()


class IsotropicSub:
    """
    迷向子丛 K ⊆ V ⊕ V∨

    Attributes:
        parent: 所在的正交丛
        labels: (种类, 下标) 列表，种类为 "V" 或 "dual"
    """

    def __init__(self, parent: OrthBundle, labels: Sequence[Any]):
        self.parent = parent
        self.labels = normalize_labels(labels)
        n_roots = len(parent.positive_part.roots)
        for _, i in self.labels:
            if i < 0 or i >= n_roots:
                raise DomainError(f"K 不是 V 的子丛: 下标 {i} 越界（共 {n_roots} 个直和项）")
        both = sorted(set(self.positive_indices) & set(self.dual_indices))
        if both:
            raise DomainError(f"K 同时含有 V_i 与 V_i∨，不是迷向的: {both}")

    @classmethod
    def from_bundle(cls, parent: OrthBundle, K: Bundle) -> "IsotropicSub":
        """
        按陈根多重集在 V 中匹配 K 的直和项

        Raises:
            DomainError: K 的陈根不是 V 的陈根的子多重集
        """
        if K.base is not parent.base:
            raise StructuralError("K 与 F 不在同一底簇上")
        available = list(enumerate(parent.positive_part.roots))
        chosen: List[int] = []
        for root in K.roots:
            for pos, (i, r) in enumerate(available):
                if r == root:
                    chosen.append(i)
                    del available[pos]
                    break
            else:
                raise DomainError(f"K 不是 V 的子丛: 陈根 {root} 不在 V 中")
        return cls(parent, chosen)

    @property
    def positive_indices(self) -> Tuple[int, ...]:
        return tuple(i for kind, i in self.labels if kind == POSITIVE)

    @property
    def dual_indices(self) -> Tuple[int, ...]:
        return tuple(i for kind, i in self.labels if kind == DUAL)

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(sorted(i for _, i in self.labels))

    def euler(self) -> GradedPolynomial:
        """e(K)：V 的线取陈根，V∨ 的线取陈根的相反数"""
        base = self.parent.base
        roots = self.parent.positive_part.roots
        result = base.one()
        for kind, i in self.labels:
            result = base.mul(result, roots[i] if kind == POSITIVE else -roots[i])
        return result

    def __repr__(self) -> str:
        body = ", ".join(f"{k}{i}" for k, i in self.labels)
        return f"IsotropicSub([{body}])"


def as_isotropic(F: OrthBundle, K: Any) -> IsotropicSub:
    if isinstance(K, IsotropicSub):
        if K.parent != F:
            raise StructuralError("K 不是 F 的子丛")
        return K
    if isinstance(K, Bundle):
        return IsotropicSub.from_bundle(F, K)
    return IsotropicSub(F, K)


def isotropic_reduce(F: OrthBundle, K: Any) -> OrthBundle:
    """
    K⊥/K

    Args:
        F: 双曲正交丛
        K: IsotropicSub、标签列表或 V 的子丛 Bundle

    Returns:
        OrthBundle: 正部分为 V 去掉 K 的下标，定向乘以 (-1)^{#dual}

    Raises:
        DomainError: K 不是迷向子丛
    """
    K = as_isotropic(F, K)
    sign = F.orientation_sign * (-1) ** len(K.dual_indices)
    return OrthBundle(F.positive_part.complement(K.indices), sign)


def sqrt_euler(F: OrthBundle) -> GradedPolynomial:
    """
    √e(F) = sign·e(V)

    Example:
        hyperbolic(O(1) ⊕ O(2)) on P^4 → 2*H^2
    """
    return F.positive_part.euler() * F.orientation_sign


def sqrt_euler_squared_check(F: OrthBundle) -> bool:
    """√e(F)² == (-1)^n·e(V)·e(V∨)"""
    base = F.base
    root = sqrt_euler(F)
    lhs = base.mul(root, root)
    V = F.positive_part
    rhs = base.mul(V.euler(), V.dual().euler()) * (-1) ** F.half_rank
    return lhs == rhs


def reindex_after_removal(total: int, removed: Sequence[int]) -> Dict[int, int]:
    """去掉 removed 下标后，剩余下标的新编号"""
    drop = set(removed)
    remaining = [i for i in range(total) if i not in drop]
    return {old: new for new, old in enumerate(remaining)}
