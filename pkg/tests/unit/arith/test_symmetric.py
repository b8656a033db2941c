"""
对称函数转换单元测试
"""

import pytest

from src.core.arith import (
    GradedPolynomial,
    default_targets,
    elementary_symmetric,
    from_elementary_symmetric,
    to_elementary_symmetric,
)
from src.core.errors import DomainError, StructuralError


def _vars(*names, degree=1):
    return [GradedPolynomial.variable(n, degree) for n in names]


class TestElementarySymmetric:
    """初等对称多项式测试"""

    def test_default_targets(self):
        """测试默认目标变量名"""
        assert default_targets(3) == ["s_1", "s_2", "s_3"]

    def test_e2_of_three(self):
        """测试 e_2(a, b, c)"""
        a, b, c = _vars("a", "b", "c")
        assert elementary_symmetric(2, ["a", "b", "c"]) == a * b + a * c + b * c

    def test_out_of_range(self):
        """测试 k 超出范围时为零"""
        assert elementary_symmetric(4, ["a", "b", "c"]).is_zero()
        assert elementary_symmetric(0, ["a"]) == 1


class TestToElementarySymmetric:
    """对称多项式改写测试"""

    def test_power_sum(self):
        """测试 u1^2 + u2^2 = s_1^2 - 2 s_2"""
        u1, u2 = _vars("u1", "u2")
        s1 = GradedPolynomial.variable("s_1")
        s2 = GradedPolynomial.variable("s_2", 2)
        result = to_elementary_symmetric(u1**2 + u2**2, ["u1", "u2"])
        assert result == s1**2 - 2 * s2
        assert result.degrees == {"s_1": 1, "s_2": 2}

    def test_weighted_targets(self):
        """测试目标变量次数按 i·deg(u) 计算"""
        u1, u2 = _vars("u1", "u2", degree=2)
        result = to_elementary_symmetric(u1 * u2, ["u1", "u2"], ["p", "q"])
        assert result == GradedPolynomial.variable("q", 4)
        assert result.degrees == {"p": 2, "q": 4}

    def test_round_trip(self):
        """测试改写后回代还原"""
        u1, u2, u3 = _vars("u1", "u2", "u3")
        f = u1**3 + u2**3 + u3**3 + 2 * u1 * u2 * u3
        names = ["u1", "u2", "u3"]
        assert from_elementary_symmetric(to_elementary_symmetric(f, names), names) == f

    def test_not_symmetric(self):
        """测试非对称输入"""
        u1, _ = _vars("u1", "u2")
        with pytest.raises(DomainError, match="不是对称"):
            to_elementary_symmetric(u1 + GradedPolynomial.zero({"u2": 1}), ["u1", "u2"])

    def test_needs_variables(self):
        """测试没有对称变量时报错"""
        with pytest.raises(DomainError, match="至少需要"):
            to_elementary_symmetric(GradedPolynomial.constant(1), [])

    def test_target_count_mismatch(self):
        """测试目标变量个数不一致"""
        u1, u2 = _vars("u1", "u2")
        with pytest.raises(StructuralError, match="不一致"):
            to_elementary_symmetric(u1 + u2, ["u1", "u2"], ["s_1"])

    def test_zero_input(self):
        """测试零多项式"""
        assert to_elementary_symmetric(GradedPolynomial.zero({"u1": 1}), ["u1"]).is_zero()
