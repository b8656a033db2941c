"""
双曲正交丛与 K⊥/K 约化单元测试
"""

import pytest

from src.core.chow import DUAL, POSITIVE, Bundle, make_proj_space
from src.core.errors import DomainError, StructuralError
from src.core.orth import (
    IsotropicSub,
    OrthBundle,
    direct_sum,
    flip,
    hyperbolic,
    isotropic_reduce,
    reindex_after_removal,
    sqrt_euler,
    sqrt_euler_squared_check,
)


@pytest.fixture
def P4():
    return make_proj_space(4)


@pytest.fixture
def F(P4):
    """hyperbolic(O(1) ⊕ O(2))"""
    return hyperbolic(Bundle.split(P4, [1, 2]))


class TestOrthBundle:
    """正交丛测试"""

    def test_sqrt_euler(self, P4, F):
        """测试 √e(F) = e(V)"""
        assert sqrt_euler(F) == 2 * P4.hyperplane() ** 2
        assert F.rank == 4
        assert F.half_rank == 2

    def test_negative_orientation(self, P4):
        """测试负定向：√e = -e(V)"""
        E = hyperbolic(Bundle.split(P4, [1]), -1)
        assert sqrt_euler(E) == -P4.hyperplane()

    def test_bad_orientation(self, P4):
        """测试非法定向符号"""
        with pytest.raises(DomainError, match="±1"):
            OrthBundle(Bundle.split(P4, [1]), 2)

    def test_flip(self, F):
        """测试翻转定向"""
        assert flip(F).orientation_sign == -1
        assert sqrt_euler(F.flip()) == -sqrt_euler(F)
        assert F.flip().flip() == F

    def test_direct_sum(self, P4, F):
        """测试直和：定向符号相乘"""
        G = hyperbolic(Bundle.split(P4, [3, -1]), -1)
        total = direct_sum(F, G)
        assert total.orientation_sign == -1
        assert total.half_rank == 4
        assert sqrt_euler(F + G) == 6 * P4.hyperplane() ** 4

    def test_underlying(self, P4, F):
        """测试 V ⊕ V∨"""
        underlying = F.underlying()
        assert underlying.rank == 4
        assert underlying.total_chern() == 1 - 5 * P4.hyperplane() ** 2 + 4 * P4.hyperplane() ** 4

    def test_squared(self, P4):
        """测试 √e(F)² = (-1)^n e(F)"""
        for twists in ([1, 2], [1], [-2, 1, 2], [0, 3]):
            assert sqrt_euler_squared_check(hyperbolic(Bundle.split(P4, twists)))

    def test_to_dict(self, F):
        """测试序列化"""
        data = F.to_dict()
        assert data["rank"] == 4
        assert data["orientation_sign"] == 1
        assert data["positive_part"]["roots"] == ["H", "2*H"]


class TestIsotropicSub:
    """迷向子丛测试"""

    def test_euler(self, P4, F):
        """测试 e(K)：对偶直和项取相反的陈根"""
        H = P4.hyperplane()
        assert IsotropicSub(F, [0]).euler() == H
        assert IsotropicSub(F, [(DUAL, 1)]).euler() == -2 * H
        assert IsotropicSub(F, [0, (DUAL, 1)]).euler() == -2 * H**2

    def test_indices(self, F):
        """测试下标分类"""
        K = IsotropicSub(F, [(DUAL, 1), 0])
        assert K.positive_indices == (0,)
        assert K.dual_indices == (1,)
        assert K.indices == (0, 1)

    def test_not_isotropic(self, F):
        """测试同时含 V_i 与 V_i∨"""
        with pytest.raises(DomainError, match="不是迷向的"):
            IsotropicSub(F, [(POSITIVE, 0), (DUAL, 0)])

    def test_out_of_range(self, F):
        """测试下标越界"""
        with pytest.raises(DomainError, match="越界"):
            IsotropicSub(F, [2])

    def test_from_bundle(self, P4, F):
        """测试按陈根匹配子丛"""
        K = IsotropicSub.from_bundle(F, Bundle.split(P4, [2]))
        assert K.labels == ((POSITIVE, 1),)

    def test_from_bundle_not_sub(self, P4, F):
        """测试陈根不在 V 中"""
        with pytest.raises(DomainError, match="不是 V 的子丛"):
            IsotropicSub.from_bundle(F, Bundle.split(P4, [3]))

    def test_from_bundle_other_base(self, F):
        """测试不同底簇"""
        with pytest.raises(StructuralError, match="同一底簇"):
            IsotropicSub.from_bundle(F, Bundle.split(make_proj_space(4), [1]))


class TestIsotropicReduce:
    """K⊥/K 约化测试"""

    def test_positive(self, P4, F):
        """测试 K = V_0：正部分去掉第0项"""
        G = isotropic_reduce(F, [0])
        assert sqrt_euler(G) == 2 * P4.hyperplane()
        assert G.orientation_sign == 1

    def test_dual_changes_orientation(self, P4, F):
        """测试 K = V_0∨：定向乘 -1"""
        G = isotropic_reduce(F, [(DUAL, 0)])
        assert G.orientation_sign == -1
        assert sqrt_euler(G) == -2 * P4.hyperplane()

    def test_two_duals(self, F):
        """测试两个对偶项：定向不变"""
        G = isotropic_reduce(F, [(DUAL, 0), (DUAL, 1)])
        assert G.orientation_sign == 1
        assert G.half_rank == 0
        assert sqrt_euler(G) == 1

    def test_sub_bundle_argument(self, P4, F):
        """测试以子丛 Bundle 给出 K"""
        G = isotropic_reduce(F, Bundle.split(P4, [1]))
        assert sqrt_euler(G) == 2 * P4.hyperplane()


class TestReindex:
    """下标重排测试"""

    def test_reindex(self):
        """测试去掉下标后的新编号"""
        assert reindex_after_removal(5, [1, 3]) == {0: 0, 2: 1, 4: 2}
        assert reindex_after_removal(2, []) == {0: 0, 1: 1}
