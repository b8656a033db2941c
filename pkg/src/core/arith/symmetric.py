"""
对称函数转换

把关于 u_1..u_n 的对称多项式改写为初等对称多项式 s_1..s_n 的多项式。
改写本身交给 sympy.polys.polyfuncs.symmetrize；本模块负责 GradedPolynomial
与 sympy 表达式之间的往返，以及次数表 deg(s_i) = i·deg(u) 的维护。
"""

import re
from itertools import combinations
from typing import List, Optional, Sequence

import sympy
from sympy.polys.polyfuncs import symmetrize

from src.core.arith.polynomial import GradedPolynomial, Monomial, merge_degrees
from src.core.errors import DomainError, StructuralError

_SYMPY_AUX = re.compile(r"^s\d+$")


def default_targets(n: int) -> List[str]:
    """默认的初等对称变量名 s_1..s_n"""
    return [f"s_{i}" for i in range(1, n + 1)]


def _common_degree(f: GradedPolynomial, variables: Sequence[str]) -> int:
    found = {f.degrees.get(v, 1) for v in variables}
    if len(found) != 1:
        raise StructuralError(f"对称变量的次数必须一致: {sorted(found)}")
    return found.pop()


def elementary_symmetric(
    k: int,
    variables: Sequence[str],
    degree: int = 1,
) -> GradedPolynomial:
    """第 k 个初等对称多项式 e_k(u_1..u_n)"""
    table = {v: degree for v in variables}
    if k < 0 or k > len(variables):
        return GradedPolynomial.zero(table)
    terms = {Monomial.of({v: 1 for v in combo}): 1 for combo in combinations(variables, k)}
    return GradedPolynomial(terms, table)


def to_elementary_symmetric(
    f: GradedPolynomial,
    variables: Sequence[str],
    targets: Optional[Sequence[str]] = None,
) -> GradedPolynomial:
    """
    对称多项式改写为初等对称多项式

    Args:
        f: 关于 variables 对称的多项式（可含其它系数变量，如 β）
        variables: u_1..u_n
        targets: s_1..s_n 的变量名，默认 s_1..s_n

    Returns:
        GradedPolynomial: 关于 targets 的多项式，deg(s_i) = i·deg(u)，截断次数沿用 f

    Raises:
        DomainError: f 不对称
        StructuralError: 变量名冲突

    Example:
        u_1^2 + u_2^2 -> s_1^2 - 2*s_2
    """
    n = len(variables)
    if n == 0:
        raise DomainError("至少需要一个对称变量")
    targets = list(targets) if targets is not None else default_targets(n)
    if len(targets) != n:
        raise StructuralError(f"目标变量个数 {len(targets)} 与对称变量个数 {n} 不一致")

    base = _common_degree(f, variables)
    coefficient_vars = [v for v in f.variables() if v not in variables]
    clash = [v for v in coefficient_vars if v in targets or _SYMPY_AUX.match(v)]
    if clash:
        raise StructuralError(f"系数变量名与对称变量名冲突: {clash}")

    degrees = merge_degrees(
        {v: f.degrees[v] for v in coefficient_vars},
        {t: (i + 1) * base for i, t in enumerate(targets)},
    )
    if f.is_zero():
        return GradedPolynomial.zero(degrees, f.cap)

    u_syms = [sympy.Symbol(v) for v in variables]
    sym_part, remainder, pairs = symmetrize(f.to_sympy(), *u_syms, formal=True)
    if sympy.expand(remainder) != 0:
        raise DomainError(f"输入不是对称多项式，余项: {remainder}")

    rename = {aux: sympy.Symbol(t) for (aux, _), t in zip(pairs, targets)}
    rewritten = sympy.sympify(sym_part).xreplace(rename)
    return GradedPolynomial.from_sympy(rewritten, degrees, f.cap)


def from_elementary_symmetric(
    g: GradedPolynomial,
    variables: Sequence[str],
    targets: Optional[Sequence[str]] = None,
    degree: int = 1,
) -> GradedPolynomial:
    """回代 s_i ↦ e_i(u)，用于往返校验"""
    targets = list(targets) if targets is not None else default_targets(len(variables))
    mapping = {t: elementary_symmetric(i + 1, variables, degree) for i, t in enumerate(targets)}
    return g.substitute(mapping, g.cap)
