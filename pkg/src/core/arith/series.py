"""
截断形式幂级数运算

按加权次数逐阶递推，结果在 cap 处截断：
- series_sqrt: 常数项为1的级数的平方根
- series_inverse: 常数项为非零有理数的级数的乘法逆
"""

from fractions import Fraction

from src.core.arith.polynomial import GradedPolynomial, poly_mul
from src.core.errors import DomainError
from src.utils.logger import logger


def _check_cap(cap: int) -> None:
    if not isinstance(cap, int) or isinstance(cap, bool) or cap < 0:
        raise DomainError(f"截断次数必须是非负整数: {cap!r}")


def series_sqrt(f: GradedPolynomial, cap: int) -> GradedPolynomial:
    """
    级数平方根

    系数递推：g_0 = 1，g_k = (f_k - Σ_{0<i<k} g_i·g_{k-i}) / 2

    Args:
        f: 加权次数0部分恰为1的级数
        cap: 截断次数

    Returns:
        GradedPolynomial: g，满足 g² ≡ f (mod 次数 > cap)，常数项为1

    Raises:
        DomainError: 常数项不为1

    Example:
        >>> x = GradedPolynomial.variable("x")
        >>> str(series_sqrt(1 - x, 4))
        '1 - 1/2*x - 1/8*x^2 - 1/16*x^3 - 5/128*x^4'
    """
    _check_cap(cap)
    parts = f.truncate(cap).graded_parts()
    head = parts.get(0, GradedPolynomial.zero(f.degrees))
    if head != 1:
        raise DomainError(f"平方根要求常数项为1，实际为: {head}")

    zero = GradedPolynomial.zero(f.degrees)
    roots = {0: GradedPolynomial.constant(1, f.degrees)}
    for k in range(1, cap + 1):
        acc = parts.get(k, zero)
        for i in range(1, k):
            acc = acc - poly_mul(roots[i], roots[k - i])
        roots[k] = acc.scale(Fraction(1, 2))

    result = zero.with_cap(cap)
    for part in roots.values():
        result = result + part.with_cap(cap)
    logger.debug(f"级数平方根: cap={cap} 项数={len(result.terms)}")
    return result


def series_inverse(f: GradedPolynomial, cap: int) -> GradedPolynomial:
    """
    级数乘法逆

    递推：u_0 = 1/f_0，u_k = -(Σ_{1≤i≤k} f_i·u_{k-i}) / f_0

    Raises:
        DomainError: 加权次数0部分不是非零有理常数
    """
    _check_cap(cap)
    parts = f.truncate(cap).graded_parts()
    head = parts.get(0, GradedPolynomial.zero(f.degrees))
    if not head.is_constant() or head.is_zero():
        raise DomainError(f"级数不可逆，常数部分为: {head}")
    c0 = head.constant_term()

    zero = GradedPolynomial.zero(f.degrees)
    inv = {0: GradedPolynomial.constant(1 / c0, f.degrees)}
    for k in range(1, cap + 1):
        acc = zero
        for i in range(1, k + 1):
            if i in parts:
                acc = acc + poly_mul(parts[i], inv[k - i])
        inv[k] = acc.scale(-1 / c0)

    result = zero.with_cap(cap)
    for part in inv.values():
        result = result + part.with_cap(cap)
    return result
