"""
单位截面消没

若 F 有截面 t = (t₂, t₁)，t₂ ∈ V 与 t₁ ∈ V∨ 落在同一个平凡直和项上且处处非零，
配对 t² 为非零常数，则 V 有处处非零的截面，e(V) = 0，从而 √e(F) = 0；
对与 t 正交的截面 s，爆破公式的两项分别为0，√e(F, s) = 0。
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from src.core.arith import to_fraction
from src.core.chow import SectionModel, VerificationReport, Verdict, resolve_decomposition
from src.core.errors import DomainError
from src.core.orth.localized import sqrt_euler_localized_blowup, tilde_bundle
from src.core.orth.orth_bundle import OrthBundle, sqrt_euler
from src.utils.logger import logger


@dataclass(frozen=True)
class UnitSection:
    """
    落在第 index 个直和项 V_i ⊕ V_i∨ 上的单位截面

    Attributes:
        index: 直和项下标（V_i 必须是平凡线丛）
        pairing: 配对 ⟨t₂, t₁⟩（非零常数）
    """

    index: int
    pairing: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "pairing", to_fraction(self.pairing))

    @property
    def square(self) -> Fraction:
        """t² = q(t, t) = 2⟨t₂, t₁⟩"""
        return 2 * self.pairing


@dataclass
class VanishingReport:
    """
    消没证明报告

    Attributes:
        reports: 各项检查
        verdict: 全部通过为 pass
    """

    reports: List[VerificationReport] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return Verdict.PASS if all(r.passed for r in self.reports) else Verdict.FAIL

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    def to_dict(self) -> Dict[str, Any]:
        return {"verdict": self.verdict, "reports": [r.to_dict() for r in self.reports]}


def vanishing_by_unit_section(
    F: OrthBundle,
    t: UnitSection,
    s: Optional[SectionModel] = None,
    xi: Optional[Any] = None,
) -> VanishingReport:
    """
    验证 √e(F) = 0，给出 s 时再验证 √e(F, s) 的两项与总和均为0

    Raises:
        DomainError: F 秩为0、t² = 0、直和项不平凡，或 s·t ≠ 0
    """
    V = F.positive_part
    if F.rank == 0:
        raise DomainError("秩为0的正交丛没有单位截面，单位截面消没判据不适用")
    if t.square == 0:
        raise DomainError("t² = 0，单位截面消没判据不适用")
    if t.index < 0 or t.index >= len(V.roots):
        raise DomainError(f"单位截面下标越界: {t.index}")
    if not V.roots[t.index].is_zero():
        raise DomainError(f"直和项 {t.index} 不是平凡线丛（陈根 {V.roots[t.index]}），没有处处非零的截面")

    base = F.base
    report = VanishingReport()
    report.reports.append(
        VerificationReport.compare("sqrt_euler_vanishes", sqrt_euler(F), base.zero(), index=t.index)
    )

    if s is not None:
        if t.index in s.indices:
            raise DomainError(f"s·t ≠ 0：截面 {s.name} 占用了单位截面的直和项 {t.index}")
        if not s.empty:
            X = s.embedding.sub
            alpha, _ = resolve_decomposition(s, None, None, xi)
            beta = X.one()
            if s.codimension == 0:
                first = X.mul(sqrt_euler(F), alpha)
            else:
                B = s.blowup
                first = B.rho_hat_pushforward(B.j_pullback(B.mul(sqrt_euler(tilde_bundle(F, s)), alpha)))
            second = X.mul(sqrt_euler(F.pullback(X, s.embedding.restrict)), beta)
            total = sqrt_euler_localized_blowup(F, s, alpha, beta)
            report.reports.extend(
                [
                    VerificationReport.compare("blowup_term_vanishes", first, X.zero(), section=s.name),
                    VerificationReport.compare("center_term_vanishes", second, X.zero(), section=s.name),
                    VerificationReport.compare("localized_vanishes", total, X.zero(), section=s.name),
                ]
            )

    if not report.passed:
        logger.warning(f"单位截面消没检查失败: {F!r} index={t.index}")
    return report
