"""
正交丛恒等式单元测试

随机模型上的约化与 Whitney 公式，以及固定模型上的局部化恒等式。
"""

import random

import pytest

from src.core.chow import DUAL, POSITIVE, Bundle, make_proj_space, section_model
from src.core.errors import DomainError
from src.core.orth import (
    check_cone_reduction,
    check_decomposition_independence,
    check_isotropic_factorization,
    check_lci_agreement,
    check_localization,
    check_orientation_flip,
    check_reduction,
    check_squared,
    check_two_section_euler_pushforward,
    check_two_section_factorization,
    check_two_section_pushforward,
    check_whitney,
    check_whitney_localized,
    hyperbolic,
    run_all_bundle_checks,
)

SPACES = {n: make_proj_space(n) for n in range(1, 6)}


def random_orth(rng: random.Random, base, max_rank: int = 4):
    twists = [rng.randint(-3, 3) for _ in range(rng.randint(1, max_rank))]
    return hyperbolic(Bundle.split(base, twists), rng.choice([1, -1]))


def random_isotropic_labels(rng: random.Random, n_roots: int):
    chosen = rng.sample(range(n_roots), rng.randint(0, n_roots))
    return [(rng.choice([POSITIVE, DUAL]), i) for i in chosen]


class TestRandomBundleIdentities:
    """随机分裂模型上的恒等式测试"""

    def test_reduction(self):
        """测试 200 个随机模型上 √e(F) = e(K)·√e(K⊥/K)"""
        rng = random.Random(2024)
        for _ in range(200):
            base = SPACES[rng.randint(1, 5)]
            F = random_orth(rng, base)
            labels = random_isotropic_labels(rng, len(F.positive_part.roots))
            report = check_reduction(F, labels)
            assert report.passed, (F, labels, report.lhs, report.rhs)

    def test_whitney(self):
        """测试 100 个随机模型上 √e(F⊕G) = √e(F)·√e(G)"""
        rng = random.Random(7)
        for _ in range(100):
            base = SPACES[rng.randint(1, 5)]
            F, G = random_orth(rng, base, 3), random_orth(rng, base, 3)
            assert check_whitney(F, G).passed

    def test_squared_and_flip(self):
        """测试平方公式与定向翻转"""
        rng = random.Random(11)
        for _ in range(50):
            F = random_orth(rng, SPACES[rng.randint(1, 5)])
            assert check_squared(F).passed
            assert check_orientation_flip(F).passed

    def test_cone_reduction(self):
        """测试分步约化与一次约化一致"""
        rng = random.Random(3)
        for _ in range(50):
            F = random_orth(rng, SPACES[4], 5)
            n = len(F.positive_part.roots)
            order = list(range(n))
            rng.shuffle(order)
            cut = rng.randint(0, n)
            K = [(rng.choice([POSITIVE, DUAL]), i) for i in order[:cut]]
            M = [(rng.choice([POSITIVE, DUAL]), i) for i in order[cut:]]
            assert check_cone_reduction(F, K, M).passed

    def test_run_all(self):
        """测试不需要截面的全部检查"""
        F = hyperbolic(Bundle.split(SPACES[4], [1, 2, -1]))
        reports = run_all_bundle_checks(F)
        assert len(reports) == 2 + 2 * 3
        assert all(r.passed for r in reports)


class TestCheckErrors:
    """检查函数的参数错误测试"""

    def test_cone_overlap(self):
        """测试 K 与 M 重叠"""
        F = hyperbolic(Bundle.split(SPACES[4], [1, 2]))
        with pytest.raises(DomainError, match="重叠"):
            check_cone_reduction(F, [0], [(DUAL, 0)])

    def test_factorization_outside_k(self):
        """测试截面不在 K 内"""
        V = Bundle.split(SPACES[4], [1, 2, 1])
        with pytest.raises(DomainError, match="不在 K 内"):
            check_isotropic_factorization(hyperbolic(V), section_model(V, [2]), [0, 1])

    def test_two_section_factorization_t_in_k(self):
        """测试 t 落在 K 内"""
        V = Bundle.split(SPACES[4], [1, 1, 1, 1])
        s, t = section_model(V, [0, 1]), section_model(V, [2])
        with pytest.raises(DomainError, match="K⊥"):
            check_two_section_factorization(hyperbolic(V), s, t, [2])

    def test_independence_without_blowup(self):
        """测试零截面没有爆破"""
        V = Bundle.split(SPACES[4], [1, 2])
        with pytest.raises(DomainError, match="不适用"):
            check_decomposition_independence(hyperbolic(V), section_model(V, []), 1)


class TestLocalizedIdentities:
    """局部化恒等式测试"""

    @pytest.fixture
    def plane(self):
        """P(4) 上 V = O(1)⊕O(1)，s 落在两个直和项上"""
        V = Bundle.split(SPACES[4], [1, 1])
        return hyperbolic(V), section_model(V, [0, 1])

    def test_localization(self, plane):
        """测试 ι_*√e(F, s)ξ = √e(F)·ξ"""
        F, s = plane
        H = SPACES[4].hyperplane()
        for xi in (1, H, 2 * H**2 + H):
            assert check_localization(F, s, xi).passed

    def test_lci_agreement(self, plane):
        """测试 lci 公式与爆破公式一致"""
        F, s = plane
        assert check_lci_agreement(F, s).passed
        assert check_lci_agreement(F, s, SPACES[4].hyperplane()).passed

    def test_decomposition_independence(self, plane):
        """测试 (α + j_*γ, β - ρ̂_*γ) 给出相同结果"""
        F, s = plane
        D = s.blowup.exceptional
        z, h = D.generator("z"), D.generator("H")
        for gamma in (1, z, h, z * h, z**2):
            assert check_decomposition_independence(F, s, gamma).passed

    def test_orientation_flip_localized(self, plane):
        """测试翻转定向使局部化类变号"""
        F, s = plane
        assert check_orientation_flip(F, s).passed

    @pytest.mark.parametrize(
        "twists,labels",
        [([1, 2, 1], [0]), ([1, 2, 1], [1]), ([2, 1, 3], [0, 1]), ([1, 1, 2], [2])],
    )
    def test_lci_agreement_partial(self, twists, labels):
        """测试部分截面的 lci 与爆破公式一致"""
        V = Bundle.split(SPACES[4], twists)
        F = hyperbolic(V)
        s = section_model(V, labels)
        assert check_lci_agreement(F, s).passed
        assert check_localization(F, s).passed

    def test_whitney_localized(self, plane):
        """测试 √e(F⊕G, (s, 0)) = √e(G)|_X·√e(F, s)"""
        F, s = plane
        G = hyperbolic(Bundle.split(SPACES[4], [2]))
        assert check_whitney_localized(F, s, G).passed

    def test_isotropic_factorization(self):
        """测试 s 取值于 K 时的分解"""
        V = Bundle.split(SPACES[4], [1, 2, 1])
        assert check_isotropic_factorization(hyperbolic(V), section_model(V, [0]), [0, 1]).passed

    def test_two_section_identities(self):
        """测试两个截面的推出与分解"""
        P3 = make_proj_space(3)
        V = Bundle.split(P3, [1, 1, 1])
        F = hyperbolic(V)
        s, t = section_model(V, [0], "s"), section_model(V, [1], "t")
        assert check_two_section_pushforward(F, s, t).passed
        assert check_two_section_euler_pushforward(V, s, t).passed

    def test_two_section_factorization(self):
        """测试 √e(F, s; t) = √e(K⊥/K, s₁; t₁)∘e(K, s₂)"""
        V = Bundle.split(SPACES[4], [1, 1, 1, 1])
        s, t = section_model(V, [0, 1], "s"), section_model(V, [2], "t")
        assert check_two_section_factorization(hyperbolic(V), s, t, [0]).passed
