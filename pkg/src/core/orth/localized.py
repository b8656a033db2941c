"""
局部化平方根欧拉类

- sqrt_euler_localized_blowup: 爆破公式
      √e(F, s)ξ = ρ̂_* j^*(√e(F̃)·α) + √e(F|_X)·β
  F̃ = L⊥/L，L = O(D) ⊂ V|_Ỹ，即 F̃ = hyperbolic(V|_Ỹ / L)，c(V/L) = c(V)/(1+d)
- sqrt_euler_localized_lci: √e(N⊥/N)|_X ∘ ι^*
- sqrt_euler_two_sections / localized_euler_two_sections: 两个独立截面 s, t，
  结果落在 X∩Z 上，Z ⊇ t⁻¹(0) 由 support 指定

输入分解 ξ = ρ_*α + ι_*β 的整理见 chow.resolve_decomposition。
"""

from typing import Any, Optional, Sequence, Tuple, Union

from src.core.arith import GradedPolynomial
from src.core.chow import (
    Bundle,
    Embedding,
    POSITIVE,
    SectionModel,
    complete_intersection_embedding,
    normalize_labels,
    resolve_decomposition,
)
from src.core.errors import DomainError, IndependenceError, StructuralError, UnsupportedModelError
from src.core.orth.orth_bundle import OrthBundle, isotropic_reduce, sqrt_euler
from src.utils.logger import logger

AMBIENT = "ambient"

Support = Union[None, str, Sequence[Any]]


def _require_section_of(F: OrthBundle, s: SectionModel) -> None:
    if s.bundle != F.positive_part:
        raise StructuralError(f"截面 {s.name} 不是 {F!r} 的截面")


def _require_positive(s: SectionModel) -> None:
    if s.dual_indices:
        raise UnsupportedModelError(
            f"截面 {s.name} 落在 V∨ 的直和项 {list(s.dual_indices)} 上，爆破公式要求截面取值于 V"
        )


def tilde_bundle(F: OrthBundle, s: SectionModel) -> OrthBundle:
    """F̃ = hyperbolic(V|_Ỹ / O(D))"""
    B = s.blowup
    V_tilde = B.pull_bundle(F.positive_part).quotient_by_line(B.generator(B.EXCEPTIONAL))
    return OrthBundle(V_tilde, F.orientation_sign)


def sqrt_euler_localized_blowup(
    F: OrthBundle,
    s: SectionModel,
    alpha: Optional[Any] = None,
    beta: Optional[Any] = None,
    xi: Optional[Any] = None,
) -> GradedPolynomial:
    """
    √e(F, s)：X = s⁻¹(0) 上的类

    Args:
        F: 双曲正交丛
        s: 取值于 V 的截面模型
        alpha: Ỹ 上的类
        beta: X 上的类
        xi: 可选，给出时检查 ρ_*α + ι_*β = ξ

    Raises:
        UnsupportedModelError: 截面不取值于 V
        DomainError: 分解不一致

    Example:
        Y = P^4，V = O(1)⊕O(1)，X = P^2，α = 1 → 1（即 [P^2]）
    """
    _require_section_of(F, s)
    _require_positive(s)
    if s.empty:
        logger.debug(f"截面 {s.name} 的零点集为空，√e(F, s) = 0")
        return GradedPolynomial.zero()
    alpha, beta = resolve_decomposition(s, alpha, beta, xi)
    emb = s.embedding
    X = emb.sub
    if s.codimension == 0:
        return X.mul(sqrt_euler(F), alpha + beta)

    B = s.blowup
    F_tilde = tilde_bundle(F, s)
    first = B.rho_hat_pushforward(B.j_pullback(B.mul(sqrt_euler(F_tilde), alpha)))
    second = X.mul(sqrt_euler(F.pullback(X, emb.restrict)), beta)
    result = X.normal_form(first + second)
    logger.debug(f"√e({F!r}, {s.name}) = {result}")
    return result


def sqrt_euler_localized_lci(F: OrthBundle, s: SectionModel, xi: Optional[Any] = None) -> GradedPolynomial:
    """
    √e(F, s)ξ = √e(N⊥/N)|_X · ι^*ξ，N 为截面所在的直和项

    Raises:
        UnsupportedModelError: 截面不取值于 V
    """
    _require_section_of(F, s)
    _require_positive(s)
    if s.empty:
        return GradedPolynomial.zero()
    emb = s.embedding
    reduced = isotropic_reduce(F, s.labels)
    xi = emb.ambient.normal_form(xi if xi is not None else 1)
    return emb.sub.mul(emb.restrict(sqrt_euler(reduced)), emb.restrict(xi))


# ----------------------------------------------------------------------
# 两个截面
# ----------------------------------------------------------------------


def _check_independent(s: SectionModel, t: SectionModel) -> None:
    if s.bundle != t.bundle:
        raise StructuralError(f"截面 {s.name} 与 {t.name} 不是同一个丛的截面")
    conflict = sorted(
        {i for k, i in s.labels for k2, j in t.labels if i == j and k != k2}
    )
    if conflict:
        raise DomainError(f"s·t ≠ 0：{s.name} 与 {t.name} 在直和项 {conflict} 上配对非零")
    shared = sorted(set(s.labels) & set(t.labels))
    if shared:
        raise IndependenceError(f"截面 {s.name} 与 {t.name} 占用了同一直和项: {shared}")


def resolve_support(t: SectionModel, support: Support) -> Tuple[Tuple[str, int], ...]:
    """
    Z 的定义标签：None → t 的全部标签；"ambient" → 空（Z = Y）；否则为 t 标签的子集

    Raises:
        DomainError: 支撑标签不属于 t
    """
    if support is None:
        return t.labels
    if support == AMBIENT:
        return ()
    labels = normalize_labels(support)
    extra = [l for l in labels if l not in t.labels]
    if extra:
        raise DomainError(f"支撑标签 {extra} 不属于截面 {t.name}")
    return labels


def _support_degrees(t: SectionModel, labels: Sequence[Tuple[str, int]]) -> Tuple[int, ...]:
    by_label = dict(zip(t.labels, t.degrees))
    return tuple(by_label[l] for l in labels)


def two_section_support(
    s: SectionModel,
    t: SectionModel,
    support: Support = None,
) -> Optional[Embedding]:
    """
    X∩Z ⊂ X 的嵌入；交为空时返回 None

    Raises:
        UnsupportedModelError: X 不是射影模型
    """
    if s.embedding is None:
        return None
    labels = resolve_support(t, support)
    degrees = _support_degrees(t, labels)
    if any(a == 0 for a in degrees) or len(degrees) > s.embedding.sub.dimension:
        return None
    return complete_intersection_embedding(s.embedding.sub, list(degrees))


def _support_class(bundle: Bundle, labels: Sequence[Tuple[str, int]]) -> GradedPolynomial:
    """[Z] = 支撑直和项陈根之积"""
    base = bundle.base
    result = base.one()
    for kind, i in labels:
        root = bundle.roots[i]
        result = base.mul(result, root if kind == POSITIVE else -root)
    return result


def _localize_two(
    s: SectionModel,
    t: SectionModel,
    support: Support,
    alpha: Optional[Any],
    beta: Optional[Any],
    xi: Optional[Any],
    reduced_class: GradedPolynomial,
    tilde_class,
) -> GradedPolynomial:
    """
    ι'_*R = ρ̂_* j^*(c̃·ρ^*[Z]·α) + (c·[Z])|_X·β，R 为 X∩Z 上的类

    c / c̃ 为去掉支撑直和项后的（平方根）欧拉类，tilde_class 延迟计算 c̃。
    """
    _check_independent(s, t)
    if s.empty:
        return GradedPolynomial.zero()
    target = two_section_support(s, t, support)
    if target is None:
        logger.debug(f"X∩Z 为空（{s.name}, {t.name}），结果为0")
        return GradedPolynomial.zero()

    labels = resolve_support(t, support)
    alpha, beta = resolve_decomposition(s, alpha, beta, xi)
    emb = s.embedding
    Y, X = emb.ambient, emb.sub
    z_class = _support_class(s.bundle, labels)
    ambient_part = Y.mul(reduced_class, z_class)

    if s.codimension == 0:
        value = X.mul(ambient_part, alpha + beta)
    else:
        B = s.blowup
        upstairs = B.mul(tilde_class(), B.rho_pullback(z_class), alpha)
        first = B.rho_hat_pushforward(B.j_pullback(upstairs))
        second = X.mul(emb.restrict(ambient_part), beta)
        value = X.normal_form(first + second)
    return target.preimage(value)


def sqrt_euler_two_sections(
    F: OrthBundle,
    s: SectionModel,
    t: SectionModel,
    alpha: Optional[Any] = None,
    beta: Optional[Any] = None,
    xi: Optional[Any] = None,
    support: Support = None,
) -> GradedPolynomial:
    """
    √e(F, s; t)：X∩Z 上的类

    t 可以含 V∨ 的直和项（迷向即可），s 必须取值于 V。

    Raises:
        IndependenceError: s 与 t 占用同一直和项
        DomainError: s·t ≠ 0，或分解不一致
        UnsupportedModelError: s 不取值于 V
    """
    _require_section_of(F, s)
    _require_positive(s)
    labels = resolve_support(t, support)
    reduced = sqrt_euler(isotropic_reduce(F, labels))
    result = _localize_two(
        s, t, support, alpha, beta, xi,
        reduced_class=reduced,
        tilde_class=lambda: sqrt_euler(isotropic_reduce(tilde_bundle(F, s), labels)),
    )
    logger.debug(f"√e({F!r}, {s.name}; {t.name}) = {result}")
    return result


def localized_euler_two_sections(
    V: Bundle,
    s: SectionModel,
    t: SectionModel,
    alpha: Optional[Any] = None,
    beta: Optional[Any] = None,
    xi: Optional[Any] = None,
    support: Support = None,
) -> GradedPolynomial:
    """
    e(V, s; t)：向量丛版本

    Raises:
        UnsupportedModelError: s 或 t 落在对偶直和项上
    """
    if s.bundle != V:
        raise StructuralError(f"截面 {s.name} 不是 {V!r} 的截面")
    _require_positive(s)
    _require_positive(t)
    labels = resolve_support(t, support)
    dropped = [i for _, i in labels]
    reduced = V.complement(dropped).euler()

    def tilde() -> GradedPolynomial:
        B = s.blowup
        V_tilde = B.pull_bundle(V).quotient_by_line(B.generator(B.EXCEPTIONAL))
        return V_tilde.complement(dropped).euler()

    return _localize_two(s, t, support, alpha, beta, xi, reduced_class=reduced, tilde_class=tilde)

