import math

import pytest

from exotic import growth
from exotic.errors import DomainError, ResourceLimitError
from exotic.words import Presentation, identity


class TestSphere:
    def test_radius_zero(self, f2):
        assert growth.sphere(f2, 0) == [identity(f2)]

    def test_free2_radius_one(self, f2):
        s = growth.sphere(f2, 1)
        assert len(s) == 4
        assert {str(u) for u in s} == {"a", "A", "b", "B"}

    def test_free2_radius_two(self, f2):
        assert len(growth.sphere(f2, 2)) == 12

    def test_elements_are_distinct_reduced_words(self, f2):
        s = growth.sphere(f2, 3)
        assert len(set(s)) == len(s)
        assert all(len(u) == 3 for u in s)

    def test_cap_error_names_flag(self, f2):
        with pytest.raises(ResourceLimitError) as err:
            growth.sphere(f2, 20, cap=1000)
        assert err.value.flag == growth.ENUM_CAP_FLAG


class TestSphereSize:
    @pytest.mark.parametrize("k,expected", [(0, 1), (1, 4), (2, 12), (3, 36), (10, 78732)])
    def test_free2_closed_form(self, f2, k, expected):
        assert growth.sphere_size(f2, k) == expected

    def test_cyclic23(self, c23):
        assert growth.sphere_size(c23, 2) == 6

    def test_matches_enumeration(self, f2, c23, c32):
        for pres, kmax in ((f2, 6), (c23, 8), (c32, 6)):
            levels = growth.spheres_up_to(pres, kmax)
            for k in range(kmax + 1):
                assert len(levels[k]) == growth.sphere_size(pres, k)

    def test_exact_integers_past_64_bits(self, f2):
        # 4 * 3^59 does not fit in 64 bits
        assert growth.sphere_size(f2, 60) == 4 * 3 ** 59

    def test_spheres_partition_balls(self, f2):
        levels = growth.spheres_up_to(f2, 6)
        for n in range(7):
            assert sum(len(levels[k]) for k in range(n + 1)) == growth.ball_size(f2, n)


class TestGrowthRate:
    def test_values(self, f2, f1, c23):
        assert growth.growth_rate(f2) == 3.0
        assert growth.growth_rate(f1) == 1.0
        assert growth.growth_rate(c23) == 2.0

    def test_cyclic22_is_subexponential(self):
        assert growth.growth_rate(Presentation.cyclic(2, 2)) == 1.0

    def test_empirical_ratio(self, f2, c23):
        for pres in (f2, c23):
            levels = growth.spheres_up_to(pres, 6)
            for k in range(2, 6):
                assert len(levels[k + 1]) / len(levels[k]) == growth.growth_rate(pres)


class TestThreshold:
    def test_free2_t1(self, f2):
        assert growth.lp_membership_threshold(f2, 1.0) == pytest.approx(math.log(3), rel=1e-15)

    def test_free2_t03(self, f2):
        assert growth.lp_membership_threshold(f2, 0.3) == pytest.approx(math.log(3) / 0.3, rel=1e-15)

    def test_polynomial_growth_threshold_zero(self, f1):
        assert growth.lp_membership_threshold(f1, 1.0) == 0.0

    def test_rejects_bad_t(self, f2):
        with pytest.raises(DomainError):
            growth.lp_membership_threshold(f2, 0.0)

    def test_dichotomy_around_threshold(self, f2):
        # partial-sum ratio test on both sides of p* = ln 3 / t
        t = 1.0
        p_star = growth.lp_membership_threshold(f2, t)
        for factor, expect_finite in ((0.95, False), (1.05, True)):
            p = p_star * factor
            value = growth.phi_lp_norm(f2, t, p)
            assert math.isfinite(value) == expect_finite
            sums = growth.phi_lp_partial_sums(f2, t, p, 300)
            late_ratio = (sums[-1] - sums[-2]) / (sums[-2] - sums[-3])
            assert (late_ratio < 1.0) == expect_finite


class TestPhiLpNorm:
    def test_free2_t1_p2(self, f2):
        expected = (1 + 4 * math.exp(-2) / (1 - 3 * math.exp(-2))) ** 0.5
        assert growth.phi_lp_norm(f2, 1.0, 2.0) == pytest.approx(expected, rel=1e-15)
        assert expected == pytest.approx(1.38252, abs=5e-6)

    def test_divergent_is_inf(self, f2):
        # ratio 3/e > 1
        assert growth.phi_lp_norm(f2, 1.0, 1.0) == math.inf

    def test_large_t_tends_to_one(self, f2):
        assert growth.phi_lp_norm(f2, 50.0, 2.0) == pytest.approx(1.0, abs=1e-12)

    def test_agrees_with_truncated_sum_radius_60(self, f2, c23):
        for pres, t, p in ((f2, 1.0, 2.0), (f2, 0.3, 4.0), (c23, 0.5, 2.5)):
            series = growth.phi_lp_partial_sums(pres, t, p, 60)[-1] ** (1.0 / p)
            assert growth.phi_lp_norm(pres, t, p) == pytest.approx(series, rel=1e-9)

    def test_rescaling_family(self, f2):
        # phi_t = (phi_{t0})^{t/t0} pointwise on enumerated balls
        from exotic.posdef import make_haagerup_function
        t0, t = 0.4, 1.1
        phi0 = make_haagerup_function(f2, t0)
        phi = make_haagerup_function(f2, t)
        for u in growth.ball(f2, 4):
            assert phi.value(u) == pytest.approx(phi0.value(u) ** (t / t0), rel=1e-12)
