"""
截面模型

截面不作为函数表示，只记录它落在哪些直和项上（标签）以及零点集数据。
标签 ("V", i) 表示 V 的第 i 个直和项 O(a_i)，("dual", i) 表示 V∨ 的第 i 个直和项 O(-a_i)。

在射影模型上，带次数 a > 0 的一般截面是正则的，零点集是完全交；
次数为 0 的标签给出处处非零的截面（零点集为空）；次数为负只有零截面，不是正则的。
"""

from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from src.core.chow.blowup import Blowup
from src.core.chow.bundle import Bundle
from src.core.chow.embedding import Embedding, complete_intersection_embedding
from src.core.chow.variety import ProjectiveModel, Variety
from src.core.errors import DomainError, StructuralError, UnsupportedModelError
from src.utils.logger import logger

Label = Tuple[str, int]

POSITIVE = "V"
DUAL = "dual"


def normalize_labels(labels: Sequence[Any]) -> Tuple[Label, ...]:
    """
    标签规范化：整数 i 视为 ("V", i)，结果按 (种类, 下标) 排序

    Raises:
        StructuralError: 标签格式错误
        DomainError: 标签重复
    """
    result: List[Label] = []
    for label in labels:
        if isinstance(label, int) and not isinstance(label, bool):
            label = (POSITIVE, label)
        if (
            not isinstance(label, tuple)
            or len(label) != 2
            or label[0] not in (POSITIVE, DUAL)
            or not isinstance(label[1], int)
        ):
            raise StructuralError(f"截面标签格式错误: {label!r}")
        result.append(label)
    if len(set(result)) != len(result):
        raise DomainError(f"截面标签重复: {result}")
    return tuple(sorted(result))


class SectionModel:
    """
    V ⊕ V∨（或向量丛 V）的截面模型

    Attributes:
        bundle: V
        labels: 截面所在的直和项
        degrees: 各标签对应线丛的次数
        embedding: 零点集 X ⊂ Y 的嵌入数据（零点集为空时为 None）
        name: 名称（报告与脚本中使用）
    """

    def __init__(self, bundle: Bundle, labels: Sequence[Any], name: str = "s"):
        self.bundle = bundle
        self.labels = normalize_labels(labels)
        self.name = name
        base = bundle.base

        for _, i in self.labels:
            if i < 0 or i >= len(bundle.roots):
                raise DomainError(f"截面标签下标越界: {i}（{bundle!r} 共 {len(bundle.roots)} 个直和项）")
        if bundle.quotient_roots:
            raise UnsupportedModelError("截面模型要求分裂丛，不能带商根")
        paired = sorted({i for k, i in self.labels if k == POSITIVE} & {i for k, i in self.labels if k == DUAL})
        if paired:
            raise UnsupportedModelError(f"截面同时落在 V_i 与 V_i∨ 上，不是迷向截面: {paired}")

        self.degrees: Tuple[int, ...] = ()
        self.embedding: Optional[Embedding] = None
        self.nowhere_vanishing = False
        self.empty = False
        self._blowup = None

        if not self.labels:
            if isinstance(base, ProjectiveModel):
                self.embedding = complete_intersection_embedding(base, [])
            return

        if not isinstance(base, ProjectiveModel):
            raise UnsupportedModelError(f"截面模型的底必须是射影模型: {base.name}")
        twists = bundle.root_twists()
        degrees = []
        for kind, i in self.labels:
            twist = twists[i] if kind == POSITIVE else -twists[i]
            if twist.denominator != 1:
                raise UnsupportedModelError(f"直和项 {kind}{i} 的次数不是整数: {twist}")
            degrees.append(int(twist))
        self.degrees = tuple(degrees)

        negative = [l for l, a in zip(self.labels, degrees) if a < 0]
        if negative:
            raise UnsupportedModelError(f"负次数直和项上只有零截面，截面不是正则的: {negative}")

        if any(a == 0 for a in degrees):
            self.nowhere_vanishing = True
            self.empty = True
        elif len(degrees) > base.dimension:
            self.empty = True
        else:
            self.embedding = complete_intersection_embedding(base, degrees)
        logger.debug(f"截面模型 {name}: 标签={self.labels} 次数={self.degrees} 空={self.empty}")

    # ------------------------------------------------------------------
    # 访问
    # ------------------------------------------------------------------

    @property
    def base(self) -> Variety:
        return self.bundle.base

    @property
    def indices(self) -> FrozenSet[int]:
        return frozenset(i for _, i in self.labels)

    @property
    def positive_indices(self) -> Tuple[int, ...]:
        return tuple(i for kind, i in self.labels if kind == POSITIVE)

    @property
    def dual_indices(self) -> Tuple[int, ...]:
        return tuple(i for kind, i in self.labels if kind == DUAL)

    @property
    def valued_in_positive(self) -> bool:
        return not self.dual_indices

    @property
    def regular(self) -> bool:
        return self.embedding is not None

    @property
    def zero_locus(self) -> Optional[Variety]:
        return self.embedding.sub if self.embedding else None

    @property
    def codimension(self) -> int:
        return len(self.labels)

    @property
    def blowup(self) -> Blowup:
        """沿零点集的爆破（首次访问时构造）"""
        if self.embedding is None:
            raise DomainError(f"截面 {self.name} 的零点集为空，没有爆破")
        if self.codimension == 0:
            raise DomainError(f"截面 {self.name} 为零截面，零点集是整个底空间")
        if self._blowup is None:
            self._blowup = Blowup(self.embedding)
        return self._blowup

    def normal_bundle(self) -> Bundle:
        """N = 标签直和项在 X 上的限制"""
        if self.embedding is None:
            raise DomainError(f"截面 {self.name} 的零点集为空")
        return self.embedding.normal

    def restricted_to(self, embedding: Embedding, name: Optional[str] = None) -> "SectionModel":
        """同一组标签在子簇上的截面模型（丛沿嵌入限制）"""
        if embedding.ambient is not self.base:
            raise StructuralError(f"嵌入的外围空间不是 {self.base.name}")
        bundle = self.bundle.pullback(embedding.sub, embedding.restrict)
        return SectionModel(bundle, self.labels, name or self.name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "bundle": self.bundle.to_dict(),
            "labels": [[kind, i] for kind, i in self.labels],
            "degrees": list(self.degrees),
            "zero_locus": self.zero_locus.name if self.zero_locus else None,
            "empty": self.empty,
        }

    def __repr__(self) -> str:
        labels = ", ".join(f"{k}{i}" for k, i in self.labels)
        return f"SectionModel({self.name}: [{labels}] of {self.bundle!r})"


def section_model(bundle: Bundle, labels: Sequence[Any], name: str = "s") -> SectionModel:
    return SectionModel(bundle, labels, name)
