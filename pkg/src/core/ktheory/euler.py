"""
K 理论（平方根）欧拉类

    𝔢(V) = λ_{-1}(V∨) = ∏(1 - L_j∨)
    √L  = 1 - Σ a_i (1 - L)^i，a_i = C(2i-2, i-1) / (i·2^{2i-1})
    √𝔢(F) = sign·√det V·𝔢(V)

局部化版本只实现典范分解 α = ρ^*ξ 的爆破公式，α 以其在例外除子 D = ℙ(N) 上的限制给出：

    √𝔢(F, s) = π_*(√L·√𝔢(F̃)·α|_D) + √𝔢(F|_X)·β

其中 √L·√𝔢(F̃) = √det V·𝔢(V/L)，L|_D = O(-1) = 1 - m。
"""

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, List, Optional, Sequence

from src.core.arith import GradedPolynomial
from src.core.chow import POSITIVE, Bundle, SectionModel, VerificationReport, make_proj_bundle
from src.core.errors import DomainError, StructuralError, UnsupportedModelError
from src.core.ktheory.kclass import KTheoryModel, augmentation_name, lowest_part
from src.core.orth import OrthBundle, as_isotropic, isotropic_reduce, sqrt_euler_localized_blowup
from src.utils.logger import logger

FIBER_VARIABLE = "m"
FIBER_GENERATOR = "z"


# ----------------------------------------------------------------------
# √L 的系数
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def sqrt_line_coefficient(i: int) -> Fraction:
    """
    a_i = C(2i-2, i-1) / (i·2^{2i-1})

    Raises:
        DomainError: i < 1

    Example:
        a_1 = 1/2，a_2 = 1/8，a_3 = 1/16，a_4 = 5/128
    """
    if not isinstance(i, int) or isinstance(i, bool) or i < 1:
        raise DomainError(f"系数下标必须是正整数: {i!r}")
    return Fraction(comb(2 * i - 2, i - 1), i * 2 ** (2 * i - 1))


class SqrtCoefficients:
    """a_1, a_2, ... 的惰性序列"""

    def __getitem__(self, i: int) -> Fraction:
        return sqrt_line_coefficient(i)

    def take(self, n: int) -> List[Fraction]:
        return [sqrt_line_coefficient(i) for i in range(1, n + 1)]


def sqrt_line(model: KTheoryModel, L: Any, cap: Optional[int] = None) -> GradedPolynomial:
    """
    线丛的平方根 √L = 1 - Σ_{i≤cap} a_i (1 - L)^i

    Raises:
        DomainError: L 不是线丛的类

    Example:
        free 模型，L = O(1) = 1 - l，cap = 2 → 1 - 1/2*l - 1/8*l^2
    """
    cap = model.cap if cap is None else cap
    if cap < 0:
        raise DomainError(f"截断次数必须是非负整数: {cap}")
    L = model.coerce(L)
    if not model.is_line(L):
        raise DomainError(f"√ 只对线丛的类有定义: {L}")
    x = (model.one() - L).truncate(cap)
    result = model.one().truncate(cap)
    power = model.one().truncate(cap)
    for i in range(1, cap + 1):
        power = power * x
        if power.is_zero():
            break
        result = result - power * sqrt_line_coefficient(i)
    return result


# ----------------------------------------------------------------------
# 欧拉类
# ----------------------------------------------------------------------


def euler_k(model: KTheoryModel, V: Bundle) -> GradedPolynomial:
    """𝔢(V) = Σ(-1)^k λ^k(V∨)"""
    result = model.zero()
    for k, lam in enumerate(model.lambda_polynomial(V.dual())):
        result = result + lam * (-1) ** k
    return result


def sqrt_euler_k(model: KTheoryModel, F: OrthBundle) -> GradedPolynomial:
    """
    √𝔢(F) = sign·√det V·𝔢(V)

    Example:
        P^1 上 hyperbolic(O(1)) → -l_H
    """
    V = F.positive_part
    _require_base(model, V)
    return sqrt_line(model, model.det(V)) * euler_k(model, V) * F.orientation_sign


def _require_base(model: KTheoryModel, V: Bundle) -> None:
    if model.variety is not V.base:
        raise StructuralError(f"{V!r} 不在 {model!r} 的底簇上")


def _isotropic_lines(model: KTheoryModel, F: OrthBundle, K: Any) -> List[GradedPolynomial]:
    """K 的直和项线丛：V 的线取 L_i，V∨ 的线取 L_i∨"""
    K = as_isotropic(F, K)
    roots = F.positive_part.roots
    return [model.line_class(roots[i] if kind == POSITIVE else -roots[i]) for kind, i in K.labels]


def _product(model: KTheoryModel, factors: Sequence[GradedPolynomial]) -> GradedPolynomial:
    result = model.one()
    for f in factors:
        result = result * f
    return result


# ----------------------------------------------------------------------
# 恒等式
# ----------------------------------------------------------------------


def check_k_squared(F: OrthBundle) -> VerificationReport:
    """√𝔢(F)² = (-1)^n·𝔢(V)·𝔢(V∨)"""
    model = KTheoryModel(F.base)
    root = sqrt_euler_k(model, F)
    V = F.positive_part
    rhs = euler_k(model, V) * euler_k(model, V.dual()) * (-1) ** F.half_rank
    return VerificationReport.compare("k_sqrt_euler_squared", root * root, rhs, bundle=repr(F))


def check_k_reduction(F: OrthBundle, K: Any) -> VerificationReport:
    """√𝔢(F) = √det K·𝔢(K)·√𝔢(K⊥/K)"""
    model = KTheoryModel(F.base)
    lines = _isotropic_lines(model, F, K)
    det_k = _product(model, lines)
    euler_part = _product(model, [model.one() - model.dual(L) for L in lines])
    rhs = sqrt_line(model, det_k) * euler_part * sqrt_euler_k(model, isotropic_reduce(F, K))
    return VerificationReport.compare(
        "k_isotropic_reduction", sqrt_euler_k(model, F), rhs, bundle=repr(F), sub=repr(as_isotropic(F, K))
    )


# ----------------------------------------------------------------------
# ℙ(N) → X 的 χ 推出
# ----------------------------------------------------------------------


def projective_bundle_pushforward_k(
    model_x: KTheoryModel,
    N: Bundle,
    cls: GradedPolynomial,
    fiber: str = FIBER_VARIABLE,
) -> GradedPolynomial:
    """
    π_*：K(ℙ(N)) → K(X)，m = 1 - O(-1)

    π_*O(-i) = 1（i = 0），0（1 ≤ i ≤ c-1），(-1)^{c-1}·Sym^{i-c}(N)⊗det N（i ≥ c）

    Args:
        model_x: X 的 K 模型
        N: X 上秩为 c 的分裂丛
        cls: X 的增广变量与 m 的多项式
    """
    c = N.rank
    if c < 1:
        raise DomainError(f"ℙ(N) 要求 N 的秩至少为1: {c}")
    lines, quotients = model_x.bundle_lines(N)
    if quotients:
        raise UnsupportedModelError("χ 推出只支持分裂丛（无商根）")
    det = _product(model_x, lines)
    twisted = {}

    def push_twist(i: int) -> GradedPolynomial:
        if i == 0:
            return model_x.one()
        if i < c:
            return model_x.zero()
        if i not in twisted:
            twisted[i] = model_x.complete_symmetric(lines, i - c) * det * (-1) ** (c - 1)
        return twisted[i]

    result = model_x.zero()
    for mono, coeff in cls.terms.items():
        k = mono.exponent(fiber)
        base_part = model_x.coerce(GradedPolynomial({mono.without(fiber): coeff}, model_x.degrees))
        pushed = model_x.zero()
        for i in range(k + 1):
            pushed = pushed + push_twist(i) * (comb(k, i) * (-1) ** i)
        result = result + base_part * pushed
    return result


# ----------------------------------------------------------------------
# 局部化
# ----------------------------------------------------------------------


def divisor_model(s: SectionModel) -> KTheoryModel:
    """D = ℙ(N) 的 K 模型：X 的增广变量加上 m = 1 - O(-1)"""
    X = s.embedding.sub
    D = make_proj_bundle(s.normal_bundle(), FIBER_GENERATOR)
    names = {g: (augmentation_name(g), 1) for g, _ in X.generators}
    names[FIBER_GENERATOR] = (FIBER_VARIABLE, -1)
    return KTheoryModel(D, names=names)


def sqrt_euler_k_localized(
    F: OrthBundle,
    s: SectionModel,
    alpha_on_divisor: Optional[Any] = None,
    beta: Optional[Any] = None,
) -> GradedPolynomial:
    """
    K 理论局部化平方根欧拉类 √𝔢(F, s)，结果在 K(X) 中

    Args:
        F: 双曲正交丛
        s: 取值于 V 的截面模型
        alpha_on_divisor: α|_D（默认1，即 α = [O_Ỹ]）
        beta: K(X) 中的类（默认0）

    Raises:
        UnsupportedModelError: 截面不取值于 V

    Example:
        Y = P^4，V = O(1)⊕O(1)，X = P^2 → 1 - l_H（即 O_X(1)）
    """
    if s.bundle != F.positive_part:
        raise StructuralError(f"截面 {s.name} 不是 {F!r} 的截面")
    if s.dual_indices:
        raise UnsupportedModelError(f"截面 {s.name} 落在 V∨ 的直和项上，K 理论爆破公式要求截面取值于 V")
    if s.empty:
        return GradedPolynomial.zero()

    emb = s.embedding
    X = emb.sub
    model_x = KTheoryModel(X)
    F_X = F.pullback(X, emb.restrict)
    beta_x = model_x.coerce(beta if beta is not None else 0)

    if s.codimension == 0:
        alpha = model_x.coerce(alpha_on_divisor if alpha_on_divisor is not None else 1)
        return sqrt_euler_k(model_x, F_X) * (alpha + beta_x)

    model_d = divisor_model(s)
    D = model_d.variety
    V_D = F_X.positive_part.pullback(D, D.pullback)
    # L|_D = O(-1)，√L·√𝔢(F̃) = √det V·𝔢(V/L)
    quotient = V_D.quotient_by_line(-D.generator(FIBER_GENERATOR))
    alpha_d = model_d.coerce(alpha_on_divisor if alpha_on_divisor is not None else 1)
    integrand = sqrt_line(model_d, model_d.det(V_D)) * euler_k(model_d, quotient) * alpha_d
    integrand = integrand * F.orientation_sign

    first = projective_bundle_pushforward_k(model_x, s.normal_bundle(), integrand)
    second = sqrt_euler_k(model_x, F_X) * beta_x
    result = first + second
    logger.debug(f"K 理论 √𝔢({F!r}, {s.name}) = {result}")
    return result


def check_k_lci_agreement(F: OrthBundle, s: SectionModel) -> VerificationReport:
    """
    √𝔢(F, s) = √det N·√𝔢(N⊥/N)|_X（α = 1，β = 0）
    """
    if s.empty:
        raise DomainError(f"截面 {s.name} 的零点集为空")
    emb = s.embedding
    X = emb.sub
    model_x = KTheoryModel(X)
    N = s.normal_bundle()
    reduced = isotropic_reduce(F, s.labels).pullback(X, emb.restrict)
    rhs = sqrt_line(model_x, model_x.det(N)) * sqrt_euler_k(model_x, reduced)
    return VerificationReport.compare(
        "k_lci_agreement", sqrt_euler_k_localized(F, s), rhs, section=s.name, bundle=repr(F)
    )


def check_leading_term(
    F: OrthBundle,
    s: SectionModel,
    alpha_on_divisor: Optional[Any] = None,
    beta: Optional[Any] = None,
    chow_alpha: Optional[Any] = None,
    chow_beta: Optional[Any] = None,
) -> VerificationReport:
    """
    K 理论结果的陈特征首项 = Chow 结果的最低次部分

    alpha_on_divisor、beta 是 K 理论一侧的分解，chow_alpha、chow_beta 是 Chow 一侧对应的分解；
    都不给时两侧均取 α = 1，β = 0。
    """
    if s.empty:
        raise DomainError(f"截面 {s.name} 的零点集为空")
    X = s.embedding.sub
    model_x = KTheoryModel(X)
    k_class = sqrt_euler_k_localized(F, s, alpha_on_divisor, beta)
    if chow_alpha is None and chow_beta is None:
        chow_class = sqrt_euler_localized_blowup(F, s)
    else:
        upstairs = s.blowup if s.codimension else s.embedding.ambient
        chow_alpha = upstairs.one() if chow_alpha is None else chow_alpha
        chow_beta = X.zero() if chow_beta is None else chow_beta
        chow_class = sqrt_euler_localized_blowup(F, s, chow_alpha, chow_beta)
    return VerificationReport.compare(
        "k_chow_leading_term",
        model_x.to_chow_leading(k_class),
        lowest_part(X.normal_form(chow_class)),
        section=s.name,
        k_class=str(k_class),
    )
