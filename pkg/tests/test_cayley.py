import random

import numpy as np
import pytest

from exotic import growth
from exotic.cayley import BallIndex
from exotic.errors import ResourceLimitError
from exotic.words import GroupElement, Presentation, multiply

from exotic import _kernels_numpy as knp

try:
    from exotic import _kernels_numba as knb
except ImportError:  # pragma: no cover
    knb = None

TABLES = [("free:2", 5), ("free:3", 4), ("free:1", 6), ("cyclic:2:3", 6),
          ("cyclic:3:3", 4), ("cyclic:4:2", 4), ("cyclic:2:2", 6)]


@pytest.mark.parametrize("descriptor,radius", TABLES)
def test_index_word_roundtrip_exhaustive(descriptor, radius):
    pres = Presentation.parse(descriptor)
    table = BallIndex(pres, radius)
    elems = growth.ball(pres, table.radius)
    assert table.size == len(elems)
    for expected, u in enumerate(elems):
        i = table.word_index(u.letters)
        assert i == expected  # canonical order matches enumeration order
        assert table.index_word(i) == u.letters


@pytest.mark.parametrize("descriptor,radius", TABLES)
def test_left_mult_matches_word_arithmetic(descriptor, radius):
    pres = Presentation.parse(descriptor)
    table = BallIndex(pres, radius)
    elems = growth.ball(pres, table.radius)
    idx = np.arange(table.size, dtype=np.int64)
    for b in range(pres.alphabet_size):
        moved = table.left_mult_indices(idx, b)
        gen = GroupElement._make(pres, (b,))
        for i, u in enumerate(elems):
            prod = multiply(gen, u)
            if len(prod) > table.radius:
                assert moved[i] == -1
            else:
                assert table.index_word(int(moved[i])) == prod.letters


def test_minus_one_propagates(f2):
    table = BallIndex(f2, 3)
    idx = np.array([-1, 0, 5], dtype=np.int64)
    out = table.left_mult_indices(idx, 0)
    assert out[0] == -1


def test_compose_left_word_matches_multiply(f2):
    table = BallIndex(f2, 5)
    elems = growth.ball(f2, 5)
    rng = random.Random(0)
    for _ in range(10):
        raw = [rng.randrange(4) for _ in range(rng.randrange(4))]
        u = GroupElement(f2, raw)
        composed = table.compose_left_word(u.letters)
        for i in rng.sample(range(table.size), 60):
            prod = multiply(u, elems[i])
            if len(prod) > table.radius:
                assert composed[i] == -1
            else:
                assert table.index_word(int(composed[i])) == prod.letters


def test_table_cap(f2):
    with pytest.raises(ResourceLimitError):
        BallIndex(f2, 12, max_elements=1000)


def test_finite_group_table_trims():
    z2 = Presentation.cyclic(2, 1)
    table = BallIndex(z2, 10)
    assert table.radius == 1
    assert table.size == 2


@pytest.mark.skipif(knb is None, reason="numba unavailable")
class TestBackendAgreement:
    @pytest.mark.parametrize("descriptor,radius", TABLES)
    def test_left_mult_bit_identical(self, descriptor, radius):
        pres = Presentation.parse(descriptor)
        table = BallIndex(pres, radius)
        idx = np.arange(table.size, dtype=np.int64)
        idx[::7] = -1
        for b in range(pres.alphabet_size):
            a = knp.left_mult(idx, b, table.family, table.m, table.radius,
                              table.offsets, table.cnt, table.level_of)
            c = knb.left_mult(idx, b, table.family, table.m, table.radius,
                              table.offsets, table.cnt, table.level_of)
            assert np.array_equal(a, c)

    def test_conv_apply_bit_identical(self, f2):
        table = BallIndex(f2, 6)
        rng = np.random.default_rng(42)
        words = [(0,), (1,), (0, 2), (3, 1)]
        idx2d = np.stack([table.compose_left_word(u) for u in words])
        coeffs = rng.random(len(words))  # nonnegative, dodges -0.0 vs +0.0
        g = rng.random(table.size)
        out_a = np.zeros(table.size)
        out_b = np.zeros(table.size)
        n = table.size_at(5)
        knp.conv_apply(out_a, n, idx2d, coeffs, g)
        knb.conv_apply(out_b, n, idx2d, coeffs, g)
        assert np.array_equal(out_a[:n], out_b[:n])

    def test_norms_agree_closely(self, f2):
        rng = np.random.default_rng(7)
        x = rng.standard_normal(100_000)
        for p in (1.0, 2.0, 3.5, float("inf")):
            a = knp.lp_norm_slice(x, x.size, p)
            b = knb.lp_norm_slice(x, x.size, p)
            assert a == pytest.approx(b, rel=1e-12)

    def test_signed_pow_agrees(self):
        rng = np.random.default_rng(11)
        x = rng.standard_normal(10_000)
        for expo in (1.0, 0.5, 2.3):
            a = np.zeros_like(x)
            b = np.zeros_like(x)
            knp.signed_pow_scaled(a, x, x.size, expo)
            knb.signed_pow_scaled(b, x, x.size, expo)
            assert np.allclose(a, b, rtol=1e-15, atol=0)
