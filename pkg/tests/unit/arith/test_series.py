"""
截断幂级数单元测试

测试级数平方根与乘法逆的系数、截断与定义域检查
"""

from fractions import Fraction

import pytest

from src.core.arith import GradedPolynomial, poly_mul, series_inverse, series_sqrt
from src.core.errors import DomainError


@pytest.fixture
def x():
    return GradedPolynomial.variable("x")


class TestSeriesSqrt:
    """级数平方根测试"""

    def test_sqrt_one_minus_x(self, x):
        """测试 √(1-x) 的前几项系数"""
        assert str(series_sqrt(1 - x, 4)) == "1 - 1/2*x - 1/8*x^2 - 1/16*x^3 - 5/128*x^4"

    @pytest.mark.parametrize("cap", [0, 1, 3, 6])
    def test_square_recovers_input(self, x, cap):
        """测试平方后在截断次数内还原"""
        f = 1 + 2 * x - x**3
        g = series_sqrt(f, cap)
        assert poly_mul(g, g, cap) == f.truncate(cap)
        assert g.cap == cap

    def test_multivariate(self):
        """测试多变量加权级数"""
        a = GradedPolynomial.variable("a")
        b = GradedPolynomial.variable("b", 2)
        f = 1 + a + b
        g = series_sqrt(f, 3)
        assert poly_mul(g, g, 3) == f
        assert g.coefficient({"b": 1}) == Fraction(1, 2)

    def test_constant_term_not_one(self, x):
        """测试常数项不为1时报错"""
        with pytest.raises(DomainError, match="常数项为1"):
            series_sqrt(4 + x, 2)

    def test_negative_cap(self, x):
        """测试负截断次数"""
        with pytest.raises(DomainError, match="截断次数"):
            series_sqrt(1 + x, -1)


class TestSeriesInverse:
    """级数乘法逆测试"""

    def test_geometric_series(self, x):
        """测试 1/(1-x) = 1 + x + x^2 + x^3"""
        assert series_inverse(1 - x, 3) == 1 + x + x**2 + x**3

    def test_non_unit_constant(self, x):
        """测试常数项不为1的逆"""
        inv = series_inverse(2 + x, 2)
        assert inv == Fraction(1, 2) - x.scale(Fraction(1, 4)) + (x**2).scale(Fraction(1, 8))
        assert poly_mul(2 + x, inv, 2) == 1

    def test_not_invertible(self, x):
        """测试常数部分为零时报错"""
        with pytest.raises(DomainError, match="不可逆"):
            series_inverse(x + x**2, 2)
