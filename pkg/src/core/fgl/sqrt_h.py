"""
形式群律派生级数与 √h 扭曲

    χ(u):  F(u, χ(u)) = 0，c₁(L∨) = χ(c₁(L))
    g(u) = χ(u)/u，g(0) = -1
    h(s₁..s_n) = (-1)^n ∏ g(u_i)，改写为初等对称多项式
    √h: h 的平方根，常数项为1
    √h(V) = √h(c₁(V), ..., c_n(V))

加法律下 √h ≡ 1，扭曲后的 √e 就是 Chow 的 √e；乘法律（β = 1）下 √h(V) = √det V，
与 K 理论的 √𝔢 一致。
"""

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence

from src.core.arith import (
    GradedPolynomial,
    Monomial,
    default_targets,
    elementary_symmetric,
    merge_degrees,
    series_sqrt,
    to_elementary_symmetric,
)
from src.core.chow import Bundle, Variety, VerificationReport
from src.core.errors import DomainError
from src.core.fgl.formal_group_law import U, FormalGroupLaw
from src.core.ktheory import KTheoryModel, lowest_part, sqrt_euler_k
from src.core.orth import OrthBundle, sqrt_euler
from src.utils.logger import logger


def _cap(law: FormalGroupLaw, cap: Optional[int]) -> int:
    cap = law.cap if cap is None else cap
    if not isinstance(cap, int) or isinstance(cap, bool) or cap < 0:
        raise DomainError(f"截断次数必须是非负整数: {cap!r}")
    return cap


def root_names(n: int) -> List[str]:
    return [f"u_{i}" for i in range(1, n + 1)]


# ----------------------------------------------------------------------
# 单变量级数
# ----------------------------------------------------------------------


def fgl_inverse(law: FormalGroupLaw, cap: Optional[int] = None) -> GradedPolynomial:
    """
    χ(u)，逐阶求解 F(u, χ(u)) ≡ 0

    Example:
        加法律 → -u；乘法律 u + v - b·uv → -u - b*u^2 - b^2*u^3 - ...
    """
    cap = _cap(law, cap)
    u = law.variable(U).with_cap(cap)
    chi = -u
    for k in range(2, cap + 1):
        residue = law.apply(u, chi, k)
        # residue 的 cap 是 k，修正后恢复到完整精度
        chi = (chi - residue.homogeneous_part(k)).with_cap(cap)
    return chi.truncate(cap)


def g_series(law: FormalGroupLaw, cap: Optional[int] = None) -> GradedPolynomial:
    """g(u) = χ(u)/u"""
    cap = _cap(law, cap)
    return fgl_inverse(law, cap + 1).divide_by_variable(U).with_cap(cap)


def _at(series: GradedPolynomial, name: str) -> GradedPolynomial:
    """u 换名为 name"""
    return series.substitute({U: GradedPolynomial.variable(name, 1)}, series.cap)


# ----------------------------------------------------------------------
# 对称级数
# ----------------------------------------------------------------------


def h_series(n: int, law: FormalGroupLaw, cap: Optional[int] = None) -> GradedPolynomial:
    """
    h(s₁..s_n) = (-1)^n ∏ g(u_i)

    Raises:
        DomainError: n < 1
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"h 的变量个数必须是正整数: {n!r}")
    cap = _cap(law, cap)
    g = g_series(law, cap)
    names = root_names(n)
    product = GradedPolynomial.constant((-1) ** n, g.degrees, cap)
    for name in names:
        product = product * _at(g, name)
    return to_elementary_symmetric(product.truncate(cap), names)


@lru_cache(maxsize=64)
def _sqrt_h_cached(n: int, law: FormalGroupLaw, cap: int) -> GradedPolynomial:
    return series_sqrt(h_series(n, law, cap), cap)


def sqrt_h_series(n: int, law: FormalGroupLaw, cap: Optional[int] = None) -> GradedPolynomial:
    """
    √h，常数项为1

    Example:
        乘法律，n = 1，cap = 3 → 1 + 1/2*b*s_1 + 3/8*b^2*s_1^2 + 5/16*b^3*s_1^3
    """
    cap = _cap(law, cap)
    result = _sqrt_h_cached(n, law, cap)
    logger.debug(f"√h: law={law.name} n={n} cap={cap} 项数={len(result.terms)}")
    return result


# ----------------------------------------------------------------------
# 代入 Chow 环
# ----------------------------------------------------------------------


def chow_normal_form(variety: Variety, cls: GradedPolynomial, ring_degrees: Dict[str, int]) -> GradedPolynomial:
    """系数变量（0次）不参与改写，按系数单项式分组求正规形式"""
    groups: Dict[Monomial, Dict[Monomial, Fraction]] = {}
    for mono, coeff in cls.terms.items():
        ring = Monomial(tuple(p for p in mono.powers if p[0] in ring_degrees))
        chow = Monomial(tuple(p for p in mono.powers if p[0] not in ring_degrees))
        bucket = groups.setdefault(ring, {})
        bucket[chow] = bucket.get(chow, Fraction(0)) + coeff
    degrees = merge_degrees(variety.degrees, ring_degrees)
    total: Dict[Monomial, Fraction] = {}
    for ring, chow_terms in groups.items():
        reduced = variety.normal_form(GradedPolynomial(chow_terms, variety.degrees))
        for m, c in reduced.terms.items():
            key = m * ring
            total[key] = total.get(key, Fraction(0)) + c
    return GradedPolynomial(total, degrees, variety.dimension)


def sqrt_h_apply(V: Bundle, law: FormalGroupLaw, cap: Optional[int] = None) -> GradedPolynomial:
    """
    √h(V) = √h(c₁(V), ..., c_n(V))

    Example:
        加法律 → 1
    """
    base = V.base
    cap = min(_cap(law, cap), base.dimension)
    n = V.rank
    if n == 0:
        return base.one()
    series = sqrt_h_series(n, law, cap)
    mapping = {t: V.chern_class(i + 1).with_cap(None) for i, t in enumerate(default_targets(n))}
    return chow_normal_form(base, series.substitute(mapping, cap), law.ring_degrees)


def twisted_sqrt_euler(F: OrthBundle, law: FormalGroupLaw) -> GradedPolynomial:
    """sign·√h(V)·e(V)"""
    V = F.positive_part
    product = sqrt_h_apply(V, law) * V.euler() * F.orientation_sign
    return chow_normal_form(F.base, product, law.ring_degrees)


# ----------------------------------------------------------------------
# 校验
# ----------------------------------------------------------------------


def check_inverse_involution(law: FormalGroupLaw, cap: Optional[int] = None) -> VerificationReport:
    """χ(χ(u)) = u"""
    cap = _cap(law, cap)
    chi = fgl_inverse(law, cap)
    twice = chi.substitute({U: chi}, cap)
    return VerificationReport.compare("fgl_inverse_involution", twice, law.variable(U).with_cap(cap), law=law.name)


def check_g_inverse(law: FormalGroupLaw, cap: Optional[int] = None) -> VerificationReport:
    """g(χ(u))·g(u) = 1，即 g(c₁(L∨)) = g(c₁(L))^{-1}"""
    cap = _cap(law, cap)
    g = g_series(law, cap)
    chi = fgl_inverse(law, cap)
    lhs = (g.substitute({U: chi}, cap) * g).truncate(cap)
    return VerificationReport.compare("g_inverse_relation", lhs, 1, law=law.name)


def check_sqrt_h_square(n: int, law: FormalGroupLaw, cap: Optional[int] = None) -> VerificationReport:
    """√h² = h"""
    cap = _cap(law, cap)
    root = sqrt_h_series(n, law, cap)
    return VerificationReport.compare(
        "sqrt_h_square", (root * root).truncate(cap), h_series(n, law, cap), law=law.name, n=n
    )


def check_sqrt_h_whitney(V: Bundle, W: Bundle, law: FormalGroupLaw) -> VerificationReport:
    """√h(V⊕W) = √h(V)·√h(W)"""
    lhs = sqrt_h_apply(V + W, law)
    rhs = chow_normal_form(V.base, sqrt_h_apply(V, law) * sqrt_h_apply(W, law), law.ring_degrees)
    return VerificationReport.compare("sqrt_h_whitney", lhs, rhs, law=law.name)


def sqrt_h_of_roots(
    law: FormalGroupLaw,
    roots: Sequence[GradedPolynomial],
    cap: int,
) -> GradedPolynomial:
    """
    形式陈根上的 √h：s_k ↦ e_k(roots)

    陈根可以是任意无常数项的级数（例如 χ(u_i) 或 K 类 1 - L∨）。
    """
    n = len(roots)
    if n == 0:
        return GradedPolynomial.constant(1)
    series = sqrt_h_series(n, law, cap)
    symbols = [f"r_{i}" for i in range(1, n + 1)]
    mapping = {
        t: elementary_symmetric(k + 1, symbols).substitute(dict(zip(symbols, roots)), cap)
        for k, t in enumerate(default_targets(n))
    }
    return series.substitute(mapping, cap)


def _twisted_top(law: FormalGroupLaw, roots: Sequence[GradedPolynomial], cap: int) -> GradedPolynomial:
    """√h(Λ)·∏ 陈根"""
    value = sqrt_h_of_roots(law, roots, cap)
    for r in roots:
        value = (value * r).truncate(cap)
    return value


def check_sqrt_h_dual(n: int, law: FormalGroupLaw, cap: Optional[int] = None) -> VerificationReport:
    """
    √h(V∨)·√h(V) = 1，V∨ 的陈根为 χ(u_i)

    在形式陈根上比较：Chow 中 V∨ 的陈根是 -u_i，只对加法律等于 χ(u_i)。
    """
    cap = _cap(law, cap)
    names = root_names(n)
    roots = [law.variable(name).with_cap(cap) for name in names]
    chi = fgl_inverse(law, cap)
    duals = [_at(chi, name) for name in names]
    product = (sqrt_h_of_roots(law, roots, cap) * sqrt_h_of_roots(law, duals, cap)).truncate(cap)
    return VerificationReport.compare("sqrt_h_dual", product, 1, law=law.name, n=n)


def check_additive_coherence(F: OrthBundle) -> VerificationReport:
    """加法律扭曲后的 √e = √e(F)"""
    law = FormalGroupLaw.additive(max(F.base.dimension, 1))
    return VerificationReport.compare(
        "additive_twist_coherence", twisted_sqrt_euler(F, law), sqrt_euler(F), bundle=repr(F)
    )


def check_multiplicative_k_agreement(F: OrthBundle) -> VerificationReport:
    """
    乘法律（β = 1）：陈根 x_j ↦ 1 - L_j∨ 后 sign·√h(V)·∏x_j = √𝔢(F)

    报告中附带 K 类陈特征的首项与扭曲 Chow 类的最低次部分。
    """
    model = KTheoryModel(F.base)
    V = F.positive_part
    if V.quotient_roots:
        raise DomainError("K 理论比较只支持分裂丛（无商根）")
    k_roots = [model.one() - model.dual(L) for L in model.bundle_lines(V)[0]]
    law = FormalGroupLaw.multiplicative(1, max(model.cap, 1))
    twisted_k = model.coerce(_twisted_top(law, k_roots, model.cap)) * F.orientation_sign
    return VerificationReport.compare(
        "multiplicative_k_agreement",
        twisted_k,
        sqrt_euler_k(model, F),
        bundle=repr(F),
        chow_leading=str(lowest_part(twisted_sqrt_euler(F, law))),
        k_leading=str(model.to_chow_leading(twisted_k)),
    )


# ----------------------------------------------------------------------
# 极大迷向子丛比较（实验）
# ----------------------------------------------------------------------


def compare_maximal_isotropics(
    law: FormalGroupLaw,
    n: int,
    swap: Sequence[int],
    cap: Optional[int] = None,
) -> VerificationReport:
    """
    √h(Λ₁)·c_top(Λ₁) 与 √h(Λ₂)·c_top(Λ₂)

    Λ₁ 的形式陈根为 u_1..u_n，Λ₂ 把 swap 中的线换成对偶（陈根 χ(u_i)）。
    只报告是否相等。

    Raises:
        DomainError: swap 越界、重复或含奇数条线
    """
    cap = _cap(law, cap)
    swap = list(swap)
    if len(set(swap)) != len(swap) or any(i < 0 or i >= n for i in swap):
        raise DomainError(f"交换下标无效: {swap}（n = {n}）")
    if len(swap) % 2:
        raise DomainError(f"交换奇数条线改变了极大迷向子丛的族: {swap}")

    names = root_names(n)
    chi = fgl_inverse(law, cap)
    first = [law.variable(name).with_cap(cap) for name in names]
    second = [_at(chi, names[i]) if i in swap else first[i] for i in range(n)]

    report = VerificationReport.compare(
        "maximal_isotropic_comparison",
        _twisted_top(law, first, cap),
        _twisted_top(law, second, cap),
        law=law.name,
        n=n,
        swap=swap,
    )
    logger.info(f"极大迷向子丛比较: law={law.name} n={n} swap={swap} → {report.verdict}")
    return report
