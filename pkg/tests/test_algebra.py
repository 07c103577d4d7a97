import math
import random

import pytest

from exotic import growth
from exotic.algebra import (GroupFunction, PolynomialWeight, convolve,
                            involution, lp_norm, pair, parse_function,
                            weighted_norm)
from exotic.errors import DomainError, MalformedInputError, ResourceLimitError
from exotic.posdef import make_haagerup_function
from exotic.words import GroupElement

from conftest import random_nonneg_function


def delta(pres, text):
    return GroupFunction.delta(pres, text)


class TestConvolve:
    def test_delta_product(self, f2):
        assert convolve(delta(f2, "a"), delta(f2, "b")) == delta(f2, "ab")

    def test_sphere_square_at_identity(self, f2):
        h = convolve(GroupFunction.sphere_indicator(f2, 1),
                     GroupFunction.sphere_indicator(f2, 1))
        assert h.value_at(()) == 4.0
        # 4 delta_e + chi_{S_2}
        assert h == GroupFunction.radial(f2, [4.0, 0.0, 1.0]).expand()

    def test_unit_law_random(self, f2):
        rng = random.Random(2)
        ball3 = growth.ball(f2, 3)
        for _ in range(20):
            f = random_nonneg_function(rng, f2, ball3)
            assert convolve(f, GroupFunction.delta(f2)) == f
            assert convolve(GroupFunction.delta(f2), f) == f

    def test_bilinear(self, f2):
        f = delta(f2, "a")
        g = delta(f2, "b")
        h = delta(f2, "B")
        lhs = convolve(f, g + h)
        assert lhs == convolve(f, g) + convolve(f, h)

    def test_cap_error_reports_estimate(self, f2):
        s2 = GroupFunction.sphere_indicator(f2, 2)
        with pytest.raises(ResourceLimitError) as err:
            convolve(s2, s2, cap=10)
        assert err.value.estimate > 10
        assert err.value.flag == "--max-support"

    def test_presentation_mismatch(self, f2, c23):
        with pytest.raises(DomainError):
            convolve(delta(f2, "a"), GroupFunction.delta(c23))

    def test_young_l1_submultiplicative(self, f2):
        rng = random.Random(4)
        ball2 = growth.ball(f2, 2)
        for _ in range(25):
            f = random_nonneg_function(rng, f2, ball2)
            g = random_nonneg_function(rng, f2, ball2)
            assert lp_norm(convolve(f, g), 1) <= lp_norm(f, 1) * lp_norm(g, 1) * (1 + 1e-12)


class TestInvolution:
    def test_delta(self, f2):
        assert involution(delta(f2, "a")) == delta(f2, "A")

    def test_sphere_symmetric(self, f2):
        s = GroupFunction.sphere_indicator(f2, 2)
        assert involution(s.expand()) == s.expand()

    def test_involutive_and_isometric(self, f2):
        rng = random.Random(6)
        ball3 = growth.ball(f2, 3)
        for _ in range(20):
            f = random_nonneg_function(rng, f2, ball3)
            assert involution(involution(f)) == f
            for p in (1.0, 2.0, 3.5, math.inf):
                assert lp_norm(involution(f), p) == pytest.approx(lp_norm(f, p), rel=1e-14)

    def test_adjoint_identity(self, f2):
        # <f* . g, h> = <g, f . h> with the conjugate (real) pairing
        rng = random.Random(8)
        ball2 = growth.ball(f2, 2)

        def dot(a, b):
            bd = dict(b.items())
            return math.fsum(v * bd.get(k, 0.0) for k, v in a.items())

        for _ in range(15):
            f = random_nonneg_function(rng, f2, ball2)
            g = random_nonneg_function(rng, f2, ball2)
            h = random_nonneg_function(rng, f2, ball2)
            lhs = dot(convolve(involution(f), g), h)
            rhs = dot(g, convolve(f, h))
            assert lhs == pytest.approx(rhs, rel=1e-12)


class TestNorms:
    def test_sphere_one_l1(self, f2):
        assert lp_norm(GroupFunction.sphere_indicator(f2, 1), 1) == 4.0

    def test_sphere_one_l2(self, f2):
        assert lp_norm(GroupFunction.sphere_indicator(f2, 1), 2) == 2.0

    def test_radial_closed_form_radius_ten(self, f2):
        assert lp_norm(GroupFunction.sphere_indicator(f2, 10), 1) == 78732.0

    def test_linf(self, f2):
        f = GroupFunction.from_items(f2, {GroupElement(f2, ()): -3.0,
                                          GroupElement(f2, (0,)): 2.0})
        assert lp_norm(f, math.inf) == 3.0

    def test_radial_sparse_agreement(self, f2, c23):
        rng = random.Random(10)
        for pres in (f2, c23):
            coeffs = [rng.uniform(-1, 1) for _ in range(7)]  # radius 6
            f = GroupFunction.radial(pres, coeffs)
            fx = f.expand()
            for p in (1.0, 2.0, 3.7, math.inf):
                assert lp_norm(f, p) == pytest.approx(lp_norm(fx, p), rel=1e-12)
            for d in (-1.0, 0.0, 2.0):
                assert weighted_norm(f, 2.0, d) == pytest.approx(
                    weighted_norm(fx, 2.0, d), rel=1e-12)


class TestWeightedNorm:
    def test_weight_algebra(self):
        w1, w2 = PolynomialWeight(1.5), PolynomialWeight(-0.5)
        for k in range(6):
            assert w1.at_length(k) * w2.at_length(k) == pytest.approx(
                PolynomialWeight(1.0).at_length(k), rel=1e-15)

    def test_delta_e_any_weight(self, f2):
        for d in (-2.0, 0.0, 3.0):
            assert weighted_norm(GroupFunction.delta(f2), 2.5, d) == 1.0

    def test_sphere_one_weighted(self, f2):
        assert weighted_norm(GroupFunction.sphere_indicator(f2, 1), 2.0, 1.0) == 4.0

    def test_degree_zero_is_lp_norm(self, f2):
        rng = random.Random(12)
        ball3 = growth.ball(f2, 3)
        for _ in range(10):
            f = random_nonneg_function(rng, f2, ball3)
            for p in (1.0, 2.0, 4.0):
                assert weighted_norm(f, p, 0.0) == lp_norm(f, p)


class TestPair:
    def test_delta_e(self, f2):
        phi = make_haagerup_function(f2, 0.7)
        assert pair(GroupFunction.delta(f2), phi) == 1.0

    def test_sphere_one(self, f2):
        phi = make_haagerup_function(f2, 1.0)
        assert pair(GroupFunction.sphere_indicator(f2, 1), phi) == pytest.approx(
            4 * math.exp(-1), rel=1e-14)

    def test_sphere_ten_radial_closed_form(self, f2):
        phi = make_haagerup_function(f2, 0.3)
        value = pair(GroupFunction.sphere_indicator(f2, 10), phi)
        assert value == pytest.approx(78732 * math.exp(-3), rel=1e-14)
        assert value == pytest.approx(4 * 3 ** 9 * math.exp(-3), rel=1e-14)

    def test_radial_matches_expanded(self, f2):
        phi = make_haagerup_function(f2, 0.5)
        f = GroupFunction.radial(f2, [0.3, -1.0, 0.0, 2.0])
        assert pair(f, phi) == pytest.approx(pair(f.expand(), phi), rel=1e-12)

    def test_bounded_by_l1(self, f2):
        rng = random.Random(14)
        ball3 = growth.ball(f2, 3)
        for _ in range(20):
            f = random_nonneg_function(rng, f2, ball3)
            phi = make_haagerup_function(f2, rng.uniform(0.1, 2.0))
            assert abs(pair(f, phi)) <= lp_norm(f, 1) * (1 + 1e-12)


class TestDescriptors:
    def test_parse(self, f2):
        assert parse_function(f2, "delta:ab") == delta(f2, "ab")
        assert parse_function(f2, "sphere:2").radial_coeffs == (0.0, 0.0, 1.0)
        assert parse_function(f2, "ball:1").radial_coeffs == (1.0, 1.0)
        assert parse_function(f2, "radial:1,0,0.5").radial_coeffs == (1.0, 0.0, 0.5)

    def test_rejects_garbage(self, f2):
        for text in ("spheres:1", "delta", "sphere:x", "radial:", "delta:zq!"):
            with pytest.raises(MalformedInputError):
                parse_function(f2, text)
