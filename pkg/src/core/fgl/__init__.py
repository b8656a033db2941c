"""
fgl 模块

形式群律与 √h 扭曲：
- FormalGroupLaw / FGLRegistry: 加法律、乘法律、自定义系数表，按名字注册
- fgl_inverse / g_series / h_series / sqrt_h_series: 派生级数
- sqrt_h_apply / twisted_sqrt_euler: 代入 Chow 环
- compare_maximal_isotropics: 两个极大迷向子丛的扭曲欧拉类比较（实验）
"""

from src.core.fgl.formal_group_law import DEFAULT_CAP, FGLRegistry, FormalGroupLaw
from src.core.fgl.sqrt_h import (
    check_additive_coherence,
    check_g_inverse,
    check_inverse_involution,
    check_multiplicative_k_agreement,
    check_sqrt_h_dual,
    check_sqrt_h_square,
    check_sqrt_h_whitney,
    chow_normal_form,
    compare_maximal_isotropics,
    fgl_inverse,
    g_series,
    h_series,
    sqrt_h_apply,
    sqrt_h_of_roots,
    sqrt_h_series,
    twisted_sqrt_euler,
)

__all__ = [
    "DEFAULT_CAP",
    "FGLRegistry",
    "FormalGroupLaw",
    "check_additive_coherence",
    "check_g_inverse",
    "check_inverse_involution",
    "check_multiplicative_k_agreement",
    "check_sqrt_h_dual",
    "check_sqrt_h_square",
    "check_sqrt_h_whitney",
    "chow_normal_form",
    "compare_maximal_isotropics",
    "fgl_inverse",
    "g_series",
    "h_series",
    "sqrt_h_apply",
    "sqrt_h_of_roots",
    "sqrt_h_series",
    "twisted_sqrt_euler",
]
