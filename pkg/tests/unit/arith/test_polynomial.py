"""
分次多项式单元测试

测试内容：
- 构造：零系数丢弃、截断、次数表检查
- 算术：加减乘幂、与有理数混合运算
- 输出：规范项序与字符串形式
- 代入、整除与 sympy 往返
"""

import random
from fractions import Fraction

import pytest
import sympy

from src.core.arith import GradedPolynomial, Monomial, combine_caps, merge_degrees, poly_mul, to_fraction
from src.core.errors import DomainError, StructuralError


@pytest.fixture
def x():
    return GradedPolynomial.variable("x")


@pytest.fixture
def y():
    return GradedPolynomial.variable("y")


class TestToFraction:
    """有理数转换测试"""

    def test_accepts_int_fraction_and_string(self):
        """测试 int、Fraction 与 'p/q' 字符串"""
        assert to_fraction(3) == Fraction(3)
        assert to_fraction(Fraction(1, 2)) == Fraction(1, 2)
        assert to_fraction("3/4") == Fraction(3, 4)

    def test_rejects_float(self):
        """测试浮点数被拒绝"""
        with pytest.raises(StructuralError, match="精确有理数"):
            to_fraction(0.5)

    def test_rejects_bool(self):
        """测试布尔值被拒绝"""
        with pytest.raises(StructuralError, match="布尔值"):
            to_fraction(True)

    def test_rejects_garbage_string(self):
        """测试无法解析的字符串"""
        with pytest.raises(StructuralError, match="无法解析"):
            to_fraction("abc")


class TestDegreeTables:
    """次数表与截断合并测试"""

    def test_merge_consistent_tables(self):
        """测试一致的次数表合并"""
        assert merge_degrees({"x": 1}, {"y": 2}, {"x": 1}) == {"x": 1, "y": 2}

    def test_merge_conflict(self):
        """测试同名变量次数冲突"""
        with pytest.raises(StructuralError, match="次数表不一致"):
            merge_degrees({"x": 1}, {"x": 2})

    def test_combine_caps(self):
        """测试截断次数取最小值"""
        assert combine_caps(None, 4, 2) == 2
        assert combine_caps(None, None) is None


class TestMonomial:
    """单项式测试"""

    def test_of_normalizes(self):
        """测试变量排序、合并同名变量、丢弃零指数"""
        mono = Monomial.of([("y", 1), ("x", 2), ("y", 1), ("z", 0)])
        assert mono.powers == (("x", 2), ("y", 2))
        assert str(mono) == "x^2*y^2"

    def test_negative_exponent(self):
        """测试负指数被拒绝"""
        with pytest.raises(DomainError, match="非负整数"):
            Monomial.of({"x": -1})

    def test_divides_and_quotient(self):
        """测试整除与精确商"""
        big = Monomial.of({"x": 3, "y": 1})
        small = Monomial.of({"x": 1})
        assert small.divides(big)
        assert big.quotient(small) == Monomial.of({"x": 2, "y": 1})
        with pytest.raises(DomainError, match="不整除"):
            small.quotient(big)

    def test_weighted_degree(self):
        """测试加权次数"""
        assert Monomial.of({"a": 2, "b": 1}).degree({"a": 1, "b": 3}) == 5


class TestConstruction:
    """构造测试"""

    def test_zero_coefficients_dropped(self):
        """测试零系数项不存储"""
        p = GradedPolynomial({Monomial.of({"x": 1}): 0}, {"x": 1})
        assert p.is_zero()
        assert str(p) == "0"

    def test_terms_above_cap_dropped(self):
        """测试超过截断次数的项被丢弃"""
        p = GradedPolynomial({Monomial.of({"x": 3}): 1, Monomial.of({"x": 1}): 2}, {"x": 1}, cap=2)
        assert p == GradedPolynomial.variable("x").scale(2)

    def test_unknown_variable(self):
        """测试项中变量不在次数表中"""
        with pytest.raises(StructuralError, match="不在次数表中"):
            GradedPolynomial({Monomial.of({"y": 1}): 1}, {"x": 1})

    @pytest.mark.parametrize("degrees", [{"x": -1}, {"x": True}, {"": 1}])
    def test_bad_degree_table(self, degrees):
        """测试非法次数表"""
        with pytest.raises(StructuralError):
            GradedPolynomial({}, degrees)

    def test_bad_cap(self):
        """测试非法截断次数"""
        with pytest.raises(StructuralError, match="截断次数"):
            GradedPolynomial({}, {}, cap=-1)

    def test_weighted_variable(self):
        """测试带权变量的次数"""
        c1 = GradedPolynomial.variable("c1")
        c2 = GradedPolynomial.variable("c2", 2)
        p = c1 + c2 + c1 * c2
        assert p.max_degree() == 3
        assert p.min_degree() == 1
        assert sorted(p.graded_parts()) == [1, 2, 3]
        assert p.homogeneous_part(2) == c2


class TestArithmetic:
    """算术测试"""

    def test_mixed_with_integers(self, x):
        """测试与整数混合的加减乘"""
        assert (1 + x) * (1 - x) == 1 - x**2
        assert 2 * x - x == x
        assert (x + 1) - 1 == x

    def test_str_canonical_order(self, x):
        """测试按次数升序输出，负系数用减号"""
        assert str(2 * x**2 - x + 3) == "3 - x + 2*x^2"
        assert str(x.scale(Fraction(1, 2))) == "1/2*x"
        assert str(-x) == "-x"

    def test_poly_mul_with_cap(self, x):
        """测试带截断的乘法"""
        assert str(poly_mul(1 + x + x**2, 1 + x, cap=2)) == "1 + 2*x + 2*x^2"

    def test_cap_propagates(self, x):
        """测试截断次数沿运算传播"""
        p = (1 + x).with_cap(2)
        assert p**3 == 1 + 3 * x + 3 * x**2
        assert (p**3).cap == 2

    def test_negative_power(self, x):
        """测试负幂指数被拒绝"""
        with pytest.raises(DomainError, match="幂指数"):
            x ** -1

    def test_degree_conflict_on_add(self):
        """测试相加时次数表冲突"""
        a = GradedPolynomial.variable("t", 1)
        b = GradedPolynomial.variable("t", 2)
        with pytest.raises(StructuralError, match="次数表不一致"):
            a + b

    def test_equality_ignores_degree_table(self):
        """测试相等只比较项"""
        assert GradedPolynomial.constant(1, {"x": 1}) == 1
        assert GradedPolynomial.zero({"x": 1}) == GradedPolynomial.zero()

    def test_ring_axioms_random(self):
        """测试随机多项式的交换律、结合律与分配律"""
        rng = random.Random(7)
        names = ["x", "y"]

        def random_poly():
            terms = {}
            for _ in range(rng.randint(1, 4)):
                mono = Monomial.of({v: rng.randint(0, 2) for v in names})
                terms[mono] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            return GradedPolynomial(terms, {"x": 1, "y": 1})

        for _ in range(30):
            a, b, c = random_poly(), random_poly(), random_poly()
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c


class TestTransforms:
    """代入与整除测试"""

    def test_substitute(self, x, y):
        """测试变量代入多项式"""
        assert (x**2).substitute({"x": 1 + y}) == (1 + y) ** 2

    def test_substitute_rational(self, x, y):
        """测试代入有理数"""
        assert (x * y + x).substitute({"x": Fraction(1, 2)}) == y.scale(Fraction(1, 2)) + Fraction(1, 2)

    def test_substitute_with_cap(self, x, y):
        """测试代入后截断"""
        assert (x**3).substitute({"x": 1 + y}, cap=1) == 1 + 3 * y

    def test_divide_by_variable(self, x, y):
        """测试精确除以变量"""
        assert (x**2 + x * y).divide_by_variable("x") == x + y

    def test_divide_by_variable_not_divisible(self, x):
        """测试有项不含该变量时报错"""
        with pytest.raises(DomainError, match="不含变量"):
            (x + 1).divide_by_variable("x")


class TestSerialization:
    """JSON 与 sympy 转换测试"""

    def test_to_dict_is_canonical(self, x, y):
        """测试 JSON 形式项已排序、系数为字符串"""
        p = y + x.scale(Fraction(-1, 2)) + 1
        data = p.to_dict()
        assert data["degrees"] == {"x": 1, "y": 1}
        assert data["terms"] == [[[], "1"], [[["x", 1]], "-1/2"], [[["y", 1]], "1"]]
        assert GradedPolynomial.from_dict(data) == p

    def test_from_dict_invalid(self):
        """测试无效 JSON"""
        with pytest.raises(StructuralError, match="无效的多项式"):
            GradedPolynomial.from_dict({"degrees": {}})

    def test_sympy_round_trip(self, x, y):
        """测试与 sympy 表达式互转"""
        p = (x - y.scale(Fraction(1, 3))) ** 2
        expr = p.to_sympy()
        X, Y = sympy.symbols("x y")
        assert sympy.expand(expr - (X - Y / 3) ** 2) == 0
        assert GradedPolynomial.from_sympy(expr, {"x": 1, "y": 1}) == p

    def test_from_sympy_unknown_symbol(self):
        """测试表达式含未知符号"""
        with pytest.raises(StructuralError, match="未知符号"):
            GradedPolynomial.from_sympy(sympy.Symbol("z") + 1, {"x": 1})
