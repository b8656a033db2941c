"""
√h 扭曲单元测试
"""

import random
from fractions import Fraction

import pytest

from src.core.chow import Bundle, make_proj_space
from src.core.errors import DomainError
from src.core.fgl import (
    FormalGroupLaw,
    check_additive_coherence,
    check_g_inverse,
    check_inverse_involution,
    check_multiplicative_k_agreement,
    check_sqrt_h_dual,
    check_sqrt_h_square,
    check_sqrt_h_whitney,
    compare_maximal_isotropics,
    h_series,
    sqrt_h_apply,
    sqrt_h_series,
    twisted_sqrt_euler,
)
from src.core.orth import hyperbolic, sqrt_euler

ADDITIVE = FormalGroupLaw.additive(4)
MULTIPLICATIVE = FormalGroupLaw.multiplicative(cap=4)
SPACES = {n: make_proj_space(n) for n in range(1, 4)}


class TestSeries:
    """√h 级数测试"""

    def test_multiplicative_one_variable(self):
        """测试乘法律 n = 1 的展开"""
        assert str(sqrt_h_series(1, MULTIPLICATIVE, 3)) == "1 + 1/2*b*s_1 + 3/8*b^2*s_1^2 + 5/16*b^3*s_1^3"

    def test_multiplicative_coefficients_to_order_four(self):
        """测试 β = 1 时 √h(s) = (1 - s)^{-1/2} 的前五个系数"""
        law = FormalGroupLaw.multiplicative(1, cap=4)
        series = sqrt_h_series(1, law, 4)
        coefficients = [series.coefficient({"s_1": k}) for k in range(5)]
        assert coefficients == [1, Fraction(1, 2), Fraction(3, 8), Fraction(5, 16), Fraction(35, 128)]

    def test_additive_is_one(self):
        """测试加法律 h = √h = 1"""
        assert h_series(2, ADDITIVE) == 1
        assert sqrt_h_series(3, ADDITIVE) == 1

    def test_bad_variable_count(self):
        """测试变量个数为0"""
        with pytest.raises(DomainError, match="正整数"):
            h_series(0, ADDITIVE)

    def test_bad_cap(self):
        """测试负截断次数"""
        with pytest.raises(DomainError, match="非负整数"):
            sqrt_h_series(1, ADDITIVE, -1)

    @pytest.mark.parametrize("law", [ADDITIVE, MULTIPLICATIVE], ids=["additive", "multiplicative"])
    def test_identities(self, law):
        """测试 χ∘χ = id、g(χ(u))g(u) = 1、√h² = h、√h(V∨)√h(V) = 1"""
        assert check_inverse_involution(law, 5).passed
        assert check_g_inverse(law, 5).passed
        assert check_sqrt_h_square(2, law, 4).passed
        assert check_sqrt_h_dual(2, law, 4).passed


class TestApply:
    """代入 Chow 环测试"""

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_square_of_line_on_projective_space(self, n):
        """测试乘法律（β = 1）下 √h(O(1))² = 1 + H + … + H^n"""
        base = SPACES[n]
        H = base.hyperplane()
        law = FormalGroupLaw.multiplicative(1, cap=4)
        root = sqrt_h_apply(Bundle.split(base, [1]), law)
        expected = base.one()
        for k in range(1, n + 1):
            expected = expected + H**k
        assert base.normal_form(root * root) == base.normal_form(expected)

    def test_line_value_on_p3(self):
        """测试 P^3 上 √h(O(1)) = (1 - H)^{-1/2}"""
        base = SPACES[3]
        H = base.hyperplane()
        law = FormalGroupLaw.multiplicative(1, cap=4)
        expected = 1 + Fraction(1, 2) * H + Fraction(3, 8) * H**2 + Fraction(5, 16) * H**3
        assert sqrt_h_apply(Bundle.split(base, [1]), law) == base.normal_form(expected)

    def test_additive(self):
        """测试加法律 √h(V) = 1"""
        V = Bundle.split(SPACES[3], [1, 2])
        assert sqrt_h_apply(V, ADDITIVE) == 1
        assert sqrt_h_apply(Bundle.split(SPACES[3], []), MULTIPLICATIVE) == 1

    def test_random_whitney(self):
        """测试 100 个随机模型上 √h(V⊕W) = √h(V)·√h(W)"""
        rng = random.Random(17)
        for _ in range(100):
            base = SPACES[rng.randint(1, 3)]
            V = Bundle.split(base, [rng.randint(-3, 3) for _ in range(rng.randint(1, 2))])
            W = Bundle.split(base, [rng.randint(-3, 3) for _ in range(rng.randint(1, 2))])
            assert check_sqrt_h_whitney(V, W, MULTIPLICATIVE).passed, (V, W)

    def test_twisted_additive(self):
        """测试加法律扭曲后就是 √e"""
        F = hyperbolic(Bundle.split(SPACES[3], [1, 2]), -1)
        assert twisted_sqrt_euler(F, ADDITIVE) == sqrt_euler(F)
        assert check_additive_coherence(F).passed

    @pytest.mark.parametrize("twists,sign", [([1, 2], 1), ([1], -1), ([2, -1], 1)])
    def test_multiplicative_matches_k_theory(self, twists, sign):
        """测试乘法律（β = 1）与 K 理论 √𝔢 一致"""
        F = hyperbolic(Bundle.split(SPACES[3], twists), sign)
        report = check_multiplicative_k_agreement(F)
        assert report.passed
        assert "chow_leading" in report.details


class TestMaximalIsotropics:
    """极大迷向子丛比较测试"""

    def test_additive_even_swap(self):
        """测试加法律下交换偶数条线：相等"""
        assert compare_maximal_isotropics(ADDITIVE, 2, [0, 1]).passed

    def test_odd_swap(self):
        """测试交换奇数条线"""
        with pytest.raises(DomainError, match="奇数"):
            compare_maximal_isotropics(ADDITIVE, 2, [0])

    @pytest.mark.parametrize("swap", [[0, 0], [0, 2]])
    def test_invalid_swap(self, swap):
        """测试越界或重复的下标"""
        with pytest.raises(DomainError, match="无效"):
            compare_maximal_isotropics(ADDITIVE, 2, swap)
