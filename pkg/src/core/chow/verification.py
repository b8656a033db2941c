"""
恒等式校验报告

各模块的恒等式检查都返回 VerificationReport：恒等式名称、左边、右边、结论。
orth、ktheory、fgl 与 CLI 共用这一格式。
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List


class Verdict:
    """校验结论常量"""

    PASS = "pass"  # 两边正规形式相同
    FAIL = "fail"  # 两边不同


@dataclass(frozen=True)
class VerificationReport:
    """
    单条恒等式的校验结果

    Attributes:
        identity: 恒等式名称，如 "reduction"
        lhs: 左边的规范文本
        rhs: 右边的规范文本
        verdict: Verdict.PASS / Verdict.FAIL
        details: 附加信息（模型描述等）
    """

    identity: str
    lhs: str
    rhs: str
    verdict: str
    details: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def compare(cls, identity: str, lhs: Any, rhs: Any, **details: Any) -> "VerificationReport":
        verdict = Verdict.PASS if lhs == rhs else Verdict.FAIL
        return cls(identity, str(lhs), str(rhs), verdict, dict(details))

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "identity": self.identity,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "verdict": self.verdict,
            "details": {k: str(v) for k, v in sorted(self.details.items())},
        }


def all_passed(reports: List[VerificationReport]) -> bool:
    return all(r.passed for r in reports)
