"""
arith 模块

精确有理数运算与稀疏分次多项式，是其它所有模块的计算底座：
- GradedPolynomial / Monomial: 稀疏分次多项式与单项式
- poly_mul: 带截断的精确乘法
- series_sqrt / series_inverse: 截断幂级数的平方根与逆
- to_elementary_symmetric: 对称多项式改写为初等对称多项式
"""

from src.core.arith.polynomial import (
    GradedPolynomial,
    Monomial,
    ONE,
    merge_degrees,
    combine_caps,
    poly_mul,
    to_fraction,
)
from src.core.arith.series import series_sqrt, series_inverse
from src.core.arith.symmetric import (
    default_targets,
    elementary_symmetric,
    from_elementary_symmetric,
    to_elementary_symmetric,
)

__all__ = [
    "GradedPolynomial",
    "Monomial",
    "ONE",
    "merge_degrees",
    "combine_caps",
    "poly_mul",
    "to_fraction",
    "series_sqrt",
    "series_inverse",
    "default_targets",
    "elementary_symmetric",
    "from_elementary_symmetric",
    "to_elementary_symmetric",
]
