"""
正交丛恒等式校验

每个函数在模型上分别计算两边并返回 VerificationReport，不抛出"不相等"异常。

- check_squared: √e(F)² = (-1)^n e(F)
- check_reduction: √e(F) = e(K)·√e(K⊥/K)
- check_whitney / check_whitney_localized: 直和公式
- check_localization: ι_*√e(F, s) = √e(F)
- check_decomposition_independence: (α + j_*γ, β - ρ̂_*γ) 给出相同结果
- check_lci_agreement: lci 公式与爆破公式一致
- check_two_section_pushforward: X∩Z 上的两截面类推到 X 等于 √e(F, s)
- check_two_section_euler_pushforward: 向量丛版本
- check_isotropic_factorization: s ∈ K 时 √e(F, s) = √e(K⊥/K)|_X·e(K, s)
- check_two_section_factorization: √e(F, s; t) = √e(K⊥/K, s₁; t₁)∘e(K, s₂)
- check_cone_reduction: 子丛模型 K ⊆ C ⊆ K⊥ 中分步约化与一次约化一致
- check_orientation_flip: 翻转定向使 √e 及局部化类变号
"""

from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.core.arith import GradedPolynomial
from src.core.chow import (
    Bundle,
    DUAL,
    POSITIVE,
    SectionModel,
    VerificationReport,
    localized_euler_blowup,
    normalize_labels,
    resolve_decomposition,
)
from src.core.errors import DomainError
from src.core.orth.localized import (
    Support,
    localized_euler_two_sections,
    sqrt_euler_localized_blowup,
    sqrt_euler_localized_lci,
    sqrt_euler_two_sections,
    two_section_support,
)
from src.core.orth.orth_bundle import (
    IsotropicSub,
    OrthBundle,
    as_isotropic,
    isotropic_reduce,
    reindex_after_removal,
    sqrt_euler,
)


def check_squared(F: OrthBundle) -> VerificationReport:
    base = F.base
    root = sqrt_euler(F)
    V = F.positive_part
    rhs = base.mul(V.euler(), V.dual().euler()) * (-1) ** F.half_rank
    return VerificationReport.compare("squared", base.mul(root, root), rhs, bundle=F)


def check_reduction(F: OrthBundle, K: Any) -> VerificationReport:
    K = as_isotropic(F, K)
    rhs = F.base.mul(K.euler(), sqrt_euler(isotropic_reduce(F, K)))
    return VerificationReport.compare("reduction", sqrt_euler(F), rhs, bundle=F, K=K)


def check_whitney(F: OrthBundle, G: OrthBundle) -> VerificationReport:
    lhs = sqrt_euler(F + G)
    rhs = F.base.mul(sqrt_euler(F), sqrt_euler(G))
    return VerificationReport.compare("whitney", lhs, rhs, left=F, right=G)


def check_whitney_localized(F: OrthBundle, s: SectionModel, G: OrthBundle) -> VerificationReport:
    """√e(F⊕G, (s, 0)) = √e(G)|_X · √e(F, s)"""
    total = F + G
    s_total = SectionModel(total.positive_part, s.labels, s.name)
    lhs = sqrt_euler_localized_blowup(total, s_total)
    rhs = sqrt_euler_localized_blowup(F, s)
    if not s.empty:
        X = s.embedding.sub
        rhs = X.mul(s.embedding.restrict(sqrt_euler(G)), rhs)
    return VerificationReport.compare("whitney_localized", lhs, rhs, section=s.name)


def check_localization(F: OrthBundle, s: SectionModel, xi: Optional[Any] = None) -> VerificationReport:
    Y = F.base
    xi = Y.normal_form(xi if xi is not None else 1)
    rhs = Y.mul(sqrt_euler(F), xi)
    local = sqrt_euler_localized_blowup(F, s, xi=xi)
    lhs = s.embedding.pushforward(local) if not s.empty else Y.zero()
    return VerificationReport.compare("localization", lhs, rhs, section=s.name, xi=xi)


def check_decomposition_independence(
    F: OrthBundle,
    s: SectionModel,
    gamma: Any,
    alpha: Optional[Any] = None,
    beta: Optional[Any] = None,
) -> VerificationReport:
    """γ 为例外除子 D 上的类"""
    if s.codimension == 0 or s.empty:
        raise DomainError(f"截面 {s.name} 没有爆破，分解无关性检查不适用")
    alpha, beta = resolve_decomposition(s, alpha, beta)
    B = s.blowup
    X = s.embedding.sub
    alpha2 = B.normal_form(alpha + B.j_pushforward(gamma))
    beta2 = X.normal_form(beta - B.rho_hat_pushforward(gamma))
    lhs = sqrt_euler_localized_blowup(F, s, alpha, beta)
    rhs = sqrt_euler_localized_blowup(F, s, alpha2, beta2)
    return VerificationReport.compare("decomposition_independence", lhs, rhs, gamma=gamma)


def check_lci_agreement(F: OrthBundle, s: SectionModel, xi: Optional[Any] = None) -> VerificationReport:
    lhs = sqrt_euler_localized_lci(F, s, xi)
    rhs = sqrt_euler_localized_blowup(F, s, xi=xi)
    return VerificationReport.compare("lci_agreement", lhs, rhs, section=s.name)


def _pushed_two_section(s: SectionModel, t: SectionModel, support: Support, value: GradedPolynomial) -> GradedPolynomial:
    target = two_section_support(s, t, support)
    return target.pushforward(value) if target is not None else value


def check_two_section_pushforward(
    F: OrthBundle,
    s: SectionModel,
    t: SectionModel,
    alpha: Optional[Any] = None,
    beta: Optional[Any] = None,
    support: Support = None,
) -> VerificationReport:
    """ι'_*√e(F, s; t) = √e(F, s)"""
    value = sqrt_euler_two_sections(F, s, t, alpha, beta, support=support)
    lhs = _pushed_two_section(s, t, support, value)
    rhs = sqrt_euler_localized_blowup(F, s, alpha, beta)
    return VerificationReport.compare("two_section_pushforward", lhs, rhs, s=s.name, t=t.name)


def check_two_section_euler_pushforward(
    V: Bundle,
    s: SectionModel,
    t: SectionModel,
    alpha: Optional[Any] = None,
    beta: Optional[Any] = None,
    support: Support = None,
) -> VerificationReport:
    """ι'_*e(V, s; t) = e(V, s)"""
    value = localized_euler_two_sections(V, s, t, alpha, beta, support=support)
    lhs = _pushed_two_section(s, t, support, value)
    rhs = localized_euler_blowup(V, s, alpha, beta)
    return VerificationReport.compare("two_section_euler_pushforward", lhs, rhs, s=s.name, t=t.name)


def _reindexed(labels: Sequence[Tuple[str, int]], mapping: Dict[int, int]) -> List[Tuple[str, int]]:
    return [(kind, mapping[i]) for kind, i in labels]


def _sub_section(V: Bundle, K_indices: Sequence[int], labels: Sequence[Tuple[str, int]], name: str) -> SectionModel:
    """K = ⊕_{i∈K} V_i 上、标签落在 K 内的截面"""
    position = {old: new for new, old in enumerate(K_indices)}
    return SectionModel(V.sub_bundle(K_indices), _reindexed(labels, position), name)


def check_isotropic_factorization(
    F: OrthBundle,
    s: SectionModel,
    K_indices: Sequence[int],
    xi: Optional[Any] = None,
) -> VerificationReport:
    """
    s 取值于 K ⊆ V 时 √e(F, s)ξ = √e(K⊥/K)|_X · e(K, s)ξ

    Raises:
        DomainError: s 不落在 K 内
    """
    K_indices = sorted(K_indices)
    outside = [l for l in s.labels if l[0] != POSITIVE or l[1] not in K_indices]
    if outside:
        raise DomainError(f"截面 {s.name} 的直和项 {outside} 不在 K 内")
    Y = F.base
    xi = Y.normal_form(xi if xi is not None else 1)
    lhs = sqrt_euler_localized_blowup(F, s, xi=xi)

    s_K = _sub_section(F.positive_part, K_indices, s.labels, s.name)
    e_local = localized_euler_blowup(s_K.bundle, s_K, xi=xi)
    reduced = sqrt_euler(isotropic_reduce(F, K_indices))
    if s.empty:
        rhs = e_local
    else:
        X = s.embedding.sub
        rhs = X.mul(s.embedding.restrict(reduced), e_local)
    return VerificationReport.compare("isotropic_factorization", lhs, rhs, section=s.name, K=K_indices)


def check_two_section_factorization(
    F: OrthBundle,
    s: SectionModel,
    t: SectionModel,
    K_indices: Sequence[int],
    xi: Optional[Any] = None,
) -> VerificationReport:
    """
    √e(F, s; t)ξ = √e(K⊥/K|_{X₂}, s₁; t₁)(e(K, s₂)ξ)

    s = (s₁, s₂)，s₂ 为 s 落在 K 内的部分，X₂ = s₂⁻¹(0)；t 与 s₁ 在 K⊥/K 中取像。

    Raises:
        DomainError: t 落在 K 内
    """
    K_indices = sorted(K_indices)
    if any(i in K_indices for i in t.indices):
        raise DomainError(f"截面 {t.name} 与 K 相交，不是 K⊥ 的截面")
    Y = F.base
    xi = Y.normal_form(xi if xi is not None else 1)
    lhs = sqrt_euler_two_sections(F, s, t, xi=xi)

    inside = [l for l in s.labels if l[1] in K_indices]
    rest = [l for l in s.labels if l[1] not in K_indices]
    s2 = _sub_section(F.positive_part, K_indices, inside, f"{s.name}_K")
    if s2.empty:
        return VerificationReport.compare("two_section_factorization", lhs, GradedPolynomial.zero(), s=s.name, t=t.name)
    xi2 = localized_euler_blowup(s2.bundle, s2, xi=xi)

    X2 = s2.embedding
    mapping = reindex_after_removal(len(F.positive_part.roots), K_indices)
    reduced = isotropic_reduce(F, K_indices).pullback(X2.sub, X2.restrict)
    s1 = SectionModel(reduced.positive_part, _reindexed(rest, mapping), f"{s.name}_1")
    t1 = SectionModel(reduced.positive_part, _reindexed(t.labels, mapping), f"{t.name}_1")
    rhs = sqrt_euler_two_sections(reduced, s1, t1, xi=xi2)
    return VerificationReport.compare("two_section_factorization", lhs, rhs, s=s.name, t=t.name, K=K_indices)


def check_cone_reduction(F: OrthBundle, K: Sequence[Any], M: Sequence[Any]) -> VerificationReport:
    """
    子丛模型 K ⊆ C = K ⊕ M ⊆ K⊥：先约化 K 再约化 M 的像，与一次约化 C 一致

    比较两边的 √e 与定向符号。
    """
    K_sub = IsotropicSub(F, K)
    M_labels = normalize_labels(M)
    overlap = set(K_sub.indices) & {i for _, i in M_labels}
    if overlap:
        raise DomainError(f"K 与 M 的直和项重叠: {sorted(overlap)}")
    C = IsotropicSub(F, list(K_sub.labels) + list(M_labels))

    once = isotropic_reduce(F, C)
    first = isotropic_reduce(F, K_sub)
    mapping = reindex_after_removal(len(F.positive_part.roots), K_sub.indices)
    twice = isotropic_reduce(first, _reindexed(M_labels, mapping))
    lhs = f"{sqrt_euler(once)} (sign {once.orientation_sign})"
    rhs = f"{sqrt_euler(twice)} (sign {twice.orientation_sign})"
    return VerificationReport.compare("cone_reduction", lhs, rhs, K=K_sub, M=list(M_labels))


def check_orientation_flip(F: OrthBundle, s: Optional[SectionModel] = None) -> VerificationReport:
    if s is None:
        return VerificationReport.compare("orientation_flip", sqrt_euler(F.flip()), -sqrt_euler(F), bundle=F)
    flipped = sqrt_euler_localized_blowup(F.flip(), s)
    return VerificationReport.compare(
        "orientation_flip", flipped, -sqrt_euler_localized_blowup(F, s), bundle=F, section=s.name
    )


def run_all_bundle_checks(F: OrthBundle) -> List[VerificationReport]:
    """不需要截面的检查：平方、每个单线 K 的约化、定向翻转"""
    reports = [check_squared(F), check_orientation_flip(F)]
    for i in range(len(F.positive_part.roots)):
        reports.append(check_reduction(F, [(POSITIVE, i)]))
        reports.append(check_reduction(F, [(DUAL, i)]))
    return reports
