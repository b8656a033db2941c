"""
截面模型单元测试
"""

import pytest

from src.core.chow import (
    DUAL,
    POSITIVE,
    Bundle,
    linear_subspace_embedding,
    make_proj_space,
    normalize_labels,
    section_model,
)
from src.core.errors import DomainError, StructuralError, UnsupportedModelError


@pytest.fixture
def P4():
    return make_proj_space(4)


class TestNormalizeLabels:
    """标签规范化测试"""

    def test_integers_and_sorting(self):
        """测试整数标签与排序（V 在 dual 之前）"""
        assert normalize_labels([(DUAL, 0), 1]) == ((POSITIVE, 1), (DUAL, 0))
        assert normalize_labels([2, 0]) == (("V", 0), ("V", 2))

    @pytest.mark.parametrize("label", ["x", ("W", 0), ("V", "0"), True])
    def test_bad_format(self, label):
        """测试格式错误的标签"""
        with pytest.raises(StructuralError, match="格式错误"):
            normalize_labels([label])

    def test_duplicates(self):
        """测试重复标签"""
        with pytest.raises(DomainError, match="重复"):
            normalize_labels([0, ("V", 0)])


class TestSectionModel:
    """截面模型测试"""

    def test_regular_section(self, P4):
        """测试 O(1)⊕O(1) 的截面：零点集为 P(2)"""
        s = section_model(Bundle.split(P4, [1, 1]), [0, 1])
        assert s.degrees == (1, 1)
        assert s.regular
        assert not s.empty
        assert s.zero_locus.name == "P(2)"
        assert s.codimension == 2
        assert s.normal_bundle().rank == 2
        assert s.positive_indices == (0, 1)
        assert s.valued_in_positive

    def test_dual_label(self, P4):
        """测试对偶直和项上的截面"""
        s = section_model(Bundle.split(P4, [-1, 2]), [(DUAL, 0)])
        assert s.degrees == (1,)
        assert s.dual_indices == (0,)
        assert not s.valued_in_positive
        assert s.indices == frozenset({0})

    def test_nowhere_vanishing(self, P4):
        """测试次数为0的直和项：处处非零"""
        s = section_model(Bundle.split(P4, [0, 1]), [0, 1])
        assert s.empty
        assert s.nowhere_vanishing
        assert s.zero_locus is None
        with pytest.raises(DomainError, match="为空"):
            s.blowup

    def test_too_many_equations(self):
        """测试方程个数超过维数"""
        s = section_model(Bundle.split(make_proj_space(2), [1, 1, 1]), [0, 1, 2])
        assert s.empty
        assert not s.nowhere_vanishing

    def test_zero_section(self, P4):
        """测试没有标签的零截面"""
        s = section_model(Bundle.split(P4, [1]), [])
        assert s.zero_locus is P4
        with pytest.raises(DomainError, match="零截面"):
            s.blowup

    def test_blowup_is_cached(self, P4):
        """测试爆破只构造一次"""
        s = section_model(Bundle.split(P4, [1, 1]), [0, 1])
        assert s.blowup is s.blowup

    def test_restricted_to(self, P4):
        """测试限制到超平面"""
        s = section_model(Bundle.split(P4, [1, 2]), [0])
        restricted = s.restricted_to(linear_subspace_embedding(P4, 3))
        assert restricted.labels == s.labels
        assert restricted.zero_locus.name == "P(2)"

    def test_to_dict(self, P4):
        """测试序列化"""
        data = section_model(Bundle.split(P4, [1, 1]), [1, 0], "t").to_dict()
        assert data["name"] == "t"
        assert data["labels"] == [["V", 0], ["V", 1]]
        assert data["degrees"] == [1, 1]
        assert data["zero_locus"] == "P(2)"
        assert data["empty"] is False


class TestUnsupported:
    """不支持的截面测试"""

    def test_out_of_range(self, P4):
        """测试下标越界"""
        with pytest.raises(DomainError, match="越界"):
            section_model(Bundle.split(P4, [1, 1]), [2])

    def test_both_summand_and_dual(self, P4):
        """测试同时落在 V_i 与 V_i∨ 上"""
        with pytest.raises(UnsupportedModelError, match="迷向"):
            section_model(Bundle.split(P4, [1, -1]), [0, (DUAL, 0)])

    def test_negative_degree(self, P4):
        """测试负次数直和项"""
        with pytest.raises(UnsupportedModelError, match="负次数"):
            section_model(Bundle.split(P4, [-1]), [0])

    def test_quotient_roots(self, P4):
        """测试带商根的丛"""
        H = P4.hyperplane()
        with pytest.raises(UnsupportedModelError, match="商根"):
            section_model(Bundle(P4, (H, 2 * H), (H,)), [0])
