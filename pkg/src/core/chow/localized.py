"""
局部化欧拉类 e(V, s)

对截面模型 s（零点集 X，爆破 Ỹ，例外除子 D），输入类 ξ 分解为
ξ = ρ_*α + ι_*β（α ∈ A(Ỹ)，β ∈ A(X)）：

    e(V, s)ξ = ρ̂_* j^*(e(V/L)·α) + e(V|_X)·β，  L = O(D)，c_1(L) = d

结果是 X 上的类，推到 Y 上等于 e(V)·ξ。
"""

from typing import Any, Optional, Tuple

from src.core.arith import GradedPolynomial
from src.core.chow.bundle import Bundle
from src.core.chow.section import SectionModel
from src.core.chow.verification import VerificationReport
from src.core.errors import DomainError, StructuralError, UnsupportedModelError
from src.utils.logger import logger


def _require_vector_section(V: Bundle, s: SectionModel) -> None:
    if s.bundle != V:
        raise StructuralError(f"截面 {s.name} 不是 {V!r} 的截面")
    if s.dual_indices:
        raise UnsupportedModelError(f"向量丛截面 {s.name} 不能落在对偶直和项上: {s.dual_indices}")


def resolve_decomposition(
    s: SectionModel,
    alpha: Optional[Any],
    beta: Optional[Any],
    xi: Optional[Any] = None,
) -> Tuple[GradedPolynomial, GradedPolynomial]:
    """
    整理输入分解 (α, β)

    都未给出时取 α = ρ^*ξ（ξ 缺省为 [Y]），β = 0；给出 ξ 时检查 ρ_*α + ι_*β = ξ。
    零截面（X = Y）时 Ỹ = Y，α 直接视为 Y 上的类。

    Raises:
        DomainError: 分解与 ξ 不一致
    """
    emb = s.embedding
    if emb is None:
        raise DomainError(f"截面 {s.name} 的零点集为空")
    Y, X = emb.ambient, emb.sub
    if s.codimension == 0:
        upstairs, push, pull = Y, (lambda c: c), Y.normal_form
    else:
        B = s.blowup
        upstairs, push, pull = B, B.rho_pushforward, B.rho_pullback

    if alpha is None and beta is None:
        alpha = pull(xi if xi is not None else 1)
        beta = 0
    alpha = upstairs.normal_form(alpha if alpha is not None else 0)
    beta = X.normal_form(beta if beta is not None else 0)

    if xi is not None:
        total = Y.normal_form(push(alpha) + emb.pushforward(beta))
        expected = Y.normal_form(xi)
        if total != expected:
            raise DomainError(f"分解不一致: ρ_*α + ι_*β = {total} ≠ ξ = {expected}")
    return alpha, beta


def localized_euler_blowup(
    V: Bundle,
    s: SectionModel,
    alpha: Optional[Any] = None,
    beta: Optional[Any] = None,
    xi: Optional[Any] = None,
) -> GradedPolynomial:
    """
    e(V, s) 的爆破公式

    Args:
        V: 向量丛
        s: V 的截面模型（只落在 V 的直和项上）
        alpha: Ỹ 上的类
        beta: X 上的类
        xi: 可选，检查分解用

    Returns:
        GradedPolynomial: X 上的类；零点集为空时为0

    Raises:
        UnsupportedModelError: 截面落在对偶直和项上
        DomainError: 分解不一致

    Example:
        Y = P^2，V = O(1)，α = 1 → 1（即 [直线]）
    """
    _require_vector_section(V, s)
    if s.empty:
        logger.debug(f"截面 {s.name} 处处非零，局部化欧拉类为0")
        return GradedPolynomial.zero()
    alpha, beta = resolve_decomposition(s, alpha, beta, xi)
    emb = s.embedding
    X = emb.sub

    if s.codimension == 0:
        return X.mul(V.euler(), alpha + beta)

    B = s.blowup
    V_tilde = B.pull_bundle(V).quotient_by_line(B.generator(B.EXCEPTIONAL))
    on_divisor = B.j_pullback(B.mul(V_tilde.euler(), alpha))
    first = B.rho_hat_pushforward(on_divisor)
    second = X.mul(V.pullback(X, emb.restrict).euler(), beta)
    result = X.normal_form(first + second)
    logger.debug(f"e({V!r}, {s.name}) = {result}")
    return result


def localized_euler_lci(V: Bundle, s: SectionModel, xi: Optional[Any] = None) -> GradedPolynomial:
    """
    e(V, s)ξ = e(V 的其余直和项)|_X · ι^*ξ

    正则截面的零点集光滑时与爆破公式一致。
    """
    _require_vector_section(V, s)
    if s.empty:
        return GradedPolynomial.zero()
    emb = s.embedding
    rest = V.complement(s.positive_indices)
    xi = emb.ambient.normal_form(xi if xi is not None else 1)
    return emb.sub.mul(rest.pullback(emb.sub, emb.restrict).euler(), emb.restrict(xi))


def verify_euler_localization(V: Bundle, s: SectionModel, xi: Optional[Any] = None) -> VerificationReport:
    """ι_* e(V, s)ξ = e(V)·ξ"""
    _require_vector_section(V, s)
    Y = V.base
    xi = Y.normal_form(xi if xi is not None else 1)
    rhs = Y.mul(V.euler(), xi)
    if s.empty:
        return VerificationReport.compare("euler_localization", Y.zero(), rhs, section=s.name)
    lhs = s.embedding.pushforward(localized_euler_blowup(V, s, xi=xi))
    return VerificationReport.compare("euler_localization", lhs, rhs, section=s.name)


def verify_euler_on_center(V: Bundle, s: SectionModel, beta: Any) -> VerificationReport:
    """e(V, s)(ι_*β) = e(V|_X)·β"""
    _require_vector_section(V, s)
    if s.embedding is None:
        raise DomainError(f"截面 {s.name} 的零点集为空")
    X = s.embedding.sub
    beta = X.normal_form(beta)
    lhs = localized_euler_blowup(V, s, alpha=0, beta=beta)
    rhs = X.mul(V.pullback(X, s.embedding.restrict).euler(), beta)
    return VerificationReport.compare("euler_on_center", lhs, rhs, section=s.name)
