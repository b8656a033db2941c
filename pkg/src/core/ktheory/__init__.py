"""
ktheory 模块

增广坐标下的 K 理论平方根欧拉类：
- KTheoryModel: 线丛类、对偶、λ 运算、陈特征首项
- sqrt_line / sqrt_line_coefficient: 线丛的平方根
- euler_k / sqrt_euler_k: K 理论（平方根）欧拉类
- sqrt_euler_k_localized: 爆破公式，χ 推出沿 ℙ(N) → X
"""

from src.core.ktheory.kclass import FREE_VARIABLE, KTheoryModel, augmentation_name, lowest_part
from src.core.ktheory.euler import (
    SqrtCoefficients,
    check_k_lci_agreement,
    check_k_reduction,
    check_k_squared,
    check_leading_term,
    divisor_model,
    euler_k,
    projective_bundle_pushforward_k,
    sqrt_euler_k,
    sqrt_euler_k_localized,
    sqrt_line,
    sqrt_line_coefficient,
)

__all__ = [
    "FREE_VARIABLE",
    "KTheoryModel",
    "augmentation_name",
    "lowest_part",
    "SqrtCoefficients",
    "check_k_lci_agreement",
    "check_k_reduction",
    "check_k_squared",
    "check_leading_term",
    "divisor_model",
    "euler_k",
    "projective_bundle_pushforward_k",
    "sqrt_euler_k",
    "sqrt_euler_k_localized",
    "sqrt_line",
    "sqrt_line_coefficient",
]
