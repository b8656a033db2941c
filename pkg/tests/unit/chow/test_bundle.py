"""
分裂向量丛单元测试
"""

import pytest

from src.core.arith import Monomial
from src.core.chow import Bundle, Variety, make_proj_space
from src.core.errors import DomainError, StructuralError


@pytest.fixture
def P4():
    return make_proj_space(4)


class TestChernClasses:
    """陈类与 Segre 类测试"""

    def test_total_chern(self, P4):
        """测试 c(O(1)⊕O(2)) = 1 + 3H + 2H^2"""
        H = P4.hyperplane()
        V = Bundle.split(P4, [1, 2])
        assert V.total_chern() == 1 + 3 * H + 2 * H**2
        assert V.rank == 2
        assert V.euler() == 2 * H**2

    def test_total_segre(self, P4):
        """测试 s = 1/c 截断到维数"""
        H = P4.hyperplane()
        V = Bundle.split(P4, [1, 2])
        assert V.total_segre() == 1 - 3 * H + 7 * H**2 - 15 * H**3 + 31 * H**4
        assert V.segre_class(2) == 7 * H**2
        assert V.segre_class(-1).is_zero()
        assert P4.mul(V.total_chern(), V.total_segre()) == 1

    def test_chern_class_out_of_range(self, P4):
        """测试超出秩的陈类为0"""
        V = Bundle.split(P4, [1, 2])
        assert V.chern_class(3).is_zero()
        assert V.chern_class(0) == 1

    def test_dual(self, P4):
        """测试对偶丛：奇数次陈类变号"""
        H = P4.hyperplane()
        V = Bundle.split(P4, [1, 2])
        assert V.dual().chern_class(1) == -3 * H
        assert V.dual().euler() == 2 * H**2

    def test_quotient_root(self, P4):
        """测试商根：c(V/L) = c(V)/(1 + c_1(L))"""
        H = P4.hyperplane()
        V = Bundle(P4, (H, 2 * H), (H,))
        assert V.rank == 1
        assert V.total_chern() == 1 + 2 * H

    def test_trivial_bundle(self, P4):
        """测试平凡丛的欧拉类为0"""
        assert Bundle.trivial(P4, 2).euler().is_zero()


class TestOperations:
    """丛运算测试"""

    def test_direct_sum(self, P4):
        """测试直和合并陈根"""
        V = Bundle.split(P4, [1]) + Bundle.split(P4, [2])
        assert V == Bundle.split(P4, [1, 2])

    def test_direct_sum_different_base(self, P4):
        """测试不同底簇的直和"""
        with pytest.raises(StructuralError, match="同一底簇"):
            Bundle.split(P4, [1]) + Bundle.split(make_proj_space(4), [1])

    def test_complement_and_sub_bundle(self, P4):
        """测试按下标取子丛与补"""
        V = Bundle.split(P4, [1, 2, 3])
        assert V.sub_bundle([0, 2]) == Bundle.split(P4, [1, 3])
        assert V.complement([1]) == Bundle.split(P4, [1, 3])
        assert V.root_twists() == [1, 2, 3]

    def test_index_out_of_range(self, P4):
        """测试下标越界与重复"""
        V = Bundle.split(P4, [1, 2])
        with pytest.raises(DomainError, match="越界"):
            V.complement([5])
        with pytest.raises(DomainError, match="重复"):
            V.sub_bundle([0, 0])

    def test_split_requires_projective_model(self):
        """测试 O(a) 只在射影模型上有定义"""
        curve = Variety("C", [("x", 1)], 1, [], Monomial.of({"x": 1}))
        with pytest.raises(StructuralError, match="射影模型"):
            Bundle.split(curve, [1])

    def test_root_must_be_linear(self, P4):
        """测试陈根必须是1次类"""
        H = P4.hyperplane()
        with pytest.raises(DomainError, match="1次齐次"):
            Bundle(P4, (H**2,))

    def test_to_dict(self, P4):
        """测试序列化"""
        assert Bundle.split(P4, [1, -2]).to_dict() == {
            "base": "P(4)",
            "rank": 2,
            "roots": ["H", "-2*H"],
            "quotient_roots": [],
        }
