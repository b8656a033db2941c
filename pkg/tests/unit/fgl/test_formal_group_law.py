"""
形式群律单元测试
"""

import pytest

from src.core.arith import GradedPolynomial
from src.core.errors import DomainError, StructuralError
from src.core.fgl import DEFAULT_CAP, FGLRegistry, FormalGroupLaw, fgl_inverse, g_series
from src.utils.logger import logger


class TestConstruction:
    """构造测试"""

    def test_additive(self):
        """测试加法律 F(u, v) = u + v"""
        law = FormalGroupLaw.additive(4)
        assert str(law.law) == "u + v"
        assert law.coefficient_table() == {}
        assert law.to_dict() == {"name": "additive", "cap": 4, "ring_variables": [], "law": "u + v"}

    def test_construction_logs_at_debug(self):
        """测试构造形式群律只记 DEBUG 日志"""
        records = []
        sink_id = logger.add(lambda message: records.append(message.record), level="DEBUG")
        try:
            FormalGroupLaw.multiplicative(cap=3)
        finally:
            logger.remove(sink_id)
        levels = {r["level"].name for r in records if "构造形式群律" in r["message"]}
        assert levels == {"DEBUG"}

    def test_multiplicative(self):
        """测试乘法律 u + v - b·uv"""
        law = FormalGroupLaw.multiplicative(cap=4)
        b = GradedPolynomial.variable("b", 0)
        assert law.coefficient_table() == {(1, 1): -b}
        assert law.ring_degrees == {"b": 0}

    def test_multiplicative_rational_beta(self):
        """测试 β 取有理数"""
        law = FormalGroupLaw.multiplicative(1, cap=3)
        assert law.ring_degrees == {}
        assert law.coefficient_table() == {(1, 1): -1}

    def test_from_table(self):
        """测试由系数表构造（u + v + 2uv 是乘法律 β = -2）"""
        law = FormalGroupLaw.from_table({(1, 1): 2}, cap=4)
        assert law.name == "custom"
        assert law.coefficient_table() == {(1, 1): 2}

    def test_default_cap(self):
        """测试默认截断次数"""
        assert FormalGroupLaw.additive().cap == DEFAULT_CAP


class TestValidation:
    """形式群律公理测试"""

    @pytest.mark.parametrize("cap", [0, -1, True])
    def test_bad_cap(self, cap):
        """测试非法截断次数"""
        with pytest.raises(DomainError):
            FormalGroupLaw("x", {}, cap)

    def test_ring_variable_clash(self):
        """测试系数变量与 u/v/w 重名"""
        with pytest.raises(StructuralError, match="冲突"):
            FormalGroupLaw("x", {}, 4, ("u",))

    def test_pure_power(self):
        """测试只含 u 的高阶项"""
        with pytest.raises(DomainError, match="同时含 u 与 v"):
            FormalGroupLaw.from_table({(0, 1): 1})

    def test_not_symmetric(self):
        """测试不满足交换律"""
        with pytest.raises(DomainError, match="F\\(u, v\\) ≠"):
            FormalGroupLaw.from_table({(1, 2): 1}, cap=4)

    def test_not_associative(self):
        """测试不满足结合律"""
        with pytest.raises(DomainError, match="结合律"):
            FormalGroupLaw.from_table({(2, 2): 1}, cap=6)

    def test_undeclared_coefficient(self):
        """测试未声明的系数变量"""
        with pytest.raises(StructuralError, match="未声明"):
            FormalGroupLaw.from_table({(1, 1): "c"}, cap=3)


class TestRegistry:
    """注册表测试"""

    def test_builtin_laws(self):
        """测试内置的形式群律"""
        assert FGLRegistry.is_registered("additive")
        assert FGLRegistry.is_registered("multiplicative")
        assert FGLRegistry.create("multiplicative", 3).cap == 3
        assert {"additive", "multiplicative"} <= set(FGLRegistry.list())

    def test_unknown(self):
        """测试未知的名字"""
        with pytest.raises(DomainError, match="未知的形式群律"):
            FGLRegistry.create("x")

    def test_register_not_callable(self):
        """测试注册不可调用的工厂"""
        with pytest.raises(StructuralError, match="可调用"):
            FGLRegistry.register("broken", "not a factory")


class TestDerivedSeries:
    """派生级数测试"""

    def test_additive_inverse(self):
        """测试加法律 χ(u) = -u"""
        assert fgl_inverse(FormalGroupLaw.additive(4)) == -GradedPolynomial.variable("u")

    def test_multiplicative_inverse(self):
        """测试乘法律 χ(u) = -u - b·u² - b²·u³"""
        law = FormalGroupLaw.multiplicative(cap=3)
        u = GradedPolynomial.variable("u")
        b = GradedPolynomial.variable("b", 0)
        assert fgl_inverse(law) == -u - b * u**2 - b**2 * u**3

    def test_g_series(self):
        """测试 g(u) = χ(u)/u，g(0) = -1"""
        law = FormalGroupLaw.multiplicative(cap=3)
        g = g_series(law, 2)
        u = GradedPolynomial.variable("u")
        b = GradedPolynomial.variable("b", 0)
        assert g == -1 - b * u - b**2 * u**2

    @pytest.mark.parametrize("cap", [4, 6])
    def test_multiplicative_inverse_full_precision(self, cap):
        """测试 χ(u) = -u/(1 - b·u) 的各阶系数一直保留到 u^cap"""
        law = FormalGroupLaw.multiplicative(cap=cap)
        u = GradedPolynomial.variable("u")
        b = GradedPolynomial.variable("b", 0)
        expected = GradedPolynomial.zero()
        for k in range(1, cap + 1):
            expected = expected - b ** (k - 1) * u**k
        chi = fgl_inverse(law)
        assert chi == expected
        assert chi.max_degree() == cap

    def test_rational_beta_inverse(self):
        """测试 β = 2 时 χ(u) = -u - 2u² - 4u³ - 8u⁴"""
        law = FormalGroupLaw.multiplicative(2, cap=4)
        u = GradedPolynomial.variable("u")
        assert fgl_inverse(law) == -u - 2 * u**2 - 4 * u**3 - 8 * u**4

    def test_apply_requires_no_constant(self):
        """测试代入带常数项的级数"""
        law = FormalGroupLaw.additive(3)
        u = GradedPolynomial.variable("u")
        with pytest.raises(DomainError, match="常数项"):
            law.apply(1 + u, u)
