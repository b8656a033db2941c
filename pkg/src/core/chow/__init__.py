"""
chow 模块

模型 Chow 环的构造与结构映射：

主要组件：
- Variety / ProjectiveModel: 有限改写系统表示的 Chow 环（点、射影空间、完全交）
- Bundle: 分裂向量丛（陈根、商根），陈类与 Segre 类
- ProjectiveBundle: ℙ(E)，射影丛推出与二次曲面丛推出
- Embedding: 正则嵌入 X ⊂ Y 的限制、推出与原像
- Blowup: 沿正则嵌入中心的爆破（例外除子 D = ℙ(N)）
- SectionModel: 截面模型（直和项标签 + 零点集）
- localized_euler_blowup: 局部化欧拉类 e(V, s)
- VerificationReport: 恒等式校验报告
"""

from src.core.chow.variety import (
    ProjectiveModel,
    RewriteRule,
    Variety,
    VarietyKind,
    integrate,
    make_complete_intersection,
    make_point,
    make_proj_space,
)
from src.core.chow.bundle import Bundle
from src.core.chow.verification import VerificationReport, Verdict, all_passed
from src.core.chow.structure import RingMap, StructureMapSet, identity_map, inclusion_map
from src.core.chow.proj_bundle import (
    ProjectiveBundle,
    make_proj_bundle,
    proj_bundle_pushforward,
    quadric_fiber_class,
    quadric_pushforward,
    verify_quadric_identity,
    verify_quadric_tower,
)
from src.core.chow.embedding import (
    Embedding,
    complete_intersection_embedding,
    linear_subspace_embedding,
    projective_embedding,
)
from src.core.chow.blowup import Blowup, blowup_along, make_blowup
from src.core.chow.section import DUAL, POSITIVE, SectionModel, normalize_labels, section_model
from src.core.chow.localized import (
    localized_euler_blowup,
    localized_euler_lci,
    resolve_decomposition,
    verify_euler_localization,
    verify_euler_on_center,
)

__all__ = [
    "ProjectiveModel",
    "RewriteRule",
    "Variety",
    "VarietyKind",
    "integrate",
    "make_complete_intersection",
    "make_point",
    "make_proj_space",
    "Bundle",
    "VerificationReport",
    "Verdict",
    "all_passed",
    "RingMap",
    "StructureMapSet",
    "identity_map",
    "inclusion_map",
    "ProjectiveBundle",
    "make_proj_bundle",
    "proj_bundle_pushforward",
    "quadric_fiber_class",
    "quadric_pushforward",
    "verify_quadric_identity",
    "verify_quadric_tower",
    "Embedding",
    "complete_intersection_embedding",
    "linear_subspace_embedding",
    "projective_embedding",
    "Blowup",
    "blowup_along",
    "make_blowup",
    "DUAL",
    "POSITIVE",
    "SectionModel",
    "normalize_labels",
    "section_model",
    "localized_euler_blowup",
    "localized_euler_lci",
    "resolve_decomposition",
    "verify_euler_localization",
    "verify_euler_on_center",
]
