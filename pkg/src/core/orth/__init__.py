"""
orth 模块

双曲正交丛 V ⊕ V∨ 的平方根欧拉类：

主要组件：
- OrthBundle / IsotropicSub: 正交丛与迷向子丛，K⊥/K 约化
- sqrt_euler: √e(F) = sign·e(V)
- sqrt_euler_localized_blowup / sqrt_euler_localized_lci: 局部化 √e(F, s)
- sqrt_euler_two_sections / localized_euler_two_sections: 两个独立截面
- vanishing_by_unit_section: 单位截面消没
- check_*: 恒等式校验
"""

from src.core.orth.orth_bundle import (
    IsotropicSub,
    OrthBundle,
    as_isotropic,
    direct_sum,
    flip,
    hyperbolic,
    isotropic_reduce,
    reindex_after_removal,
    sqrt_euler,
    sqrt_euler_squared_check,
)
from src.core.orth.localized import (
    AMBIENT,
    localized_euler_two_sections,
    resolve_support,
    sqrt_euler_localized_blowup,
    sqrt_euler_localized_lci,
    sqrt_euler_two_sections,
    tilde_bundle,
    two_section_support,
)
from src.core.orth.vanishing import UnitSection, VanishingReport, vanishing_by_unit_section
from src.core.orth.identities import (
    check_cone_reduction,
    check_decomposition_independence,
    check_isotropic_factorization,
    check_lci_agreement,
    check_localization,
    check_orientation_flip,
    check_reduction,
    check_squared,
    check_two_section_euler_pushforward,
    check_two_section_factorization,
    check_two_section_pushforward,
    check_whitney,
    check_whitney_localized,
    run_all_bundle_checks,
)

__all__ = [
    "IsotropicSub",
    "OrthBundle",
    "as_isotropic",
    "direct_sum",
    "flip",
    "hyperbolic",
    "isotropic_reduce",
    "reindex_after_removal",
    "sqrt_euler",
    "sqrt_euler_squared_check",
    "AMBIENT",
    "localized_euler_two_sections",
    "resolve_support",
    "sqrt_euler_localized_blowup",
    "sqrt_euler_localized_lci",
    "sqrt_euler_two_sections",
    "tilde_bundle",
    "two_section_support",
    "UnitSection",
    "VanishingReport",
    "vanishing_by_unit_section",
    "check_cone_reduction",
    "check_decomposition_independence",
    "check_isotropic_factorization",
    "check_lci_agreement",
    "check_localization",
    "check_orientation_flip",
    "check_reduction",
    "check_squared",
    "check_two_section_euler_pushforward",
    "check_two_section_factorization",
    "check_two_section_pushforward",
    "check_whitney",
    "check_whitney_localized",
    "run_all_bundle_checks",
]
