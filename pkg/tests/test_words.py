import random

import pytest

from exotic.errors import DomainError, MalformedInputError
from exotic.words import (GroupElement, Presentation, identity, inverse, length,
                          multiply, reduce)

from conftest import random_element


def w(pres, text):
    return GroupElement(pres, pres.parse_word(text))


class TestReduce:
    def test_free_cancellation(self, f2):
        assert reduce(f2.parse_word("aA"), f2) == identity(f2)

    def test_free_inner_cancellation(self, f2):
        assert reduce(f2.parse_word("abBa"), f2) == w(f2, "aa")

    def test_cyclic_order_two_letter(self, c23):
        x1 = c23.parse_word("1^1")
        assert reduce(x1 + x1, c23) == identity(c23)

    def test_cyclic_exponent_merge(self, c32):
        # (1^1)(1^1) = 1^2 in Z/3
        raw = c32.parse_word("1^1") * 2
        assert reduce(raw, c32) == w(c32, "1^2")

    def test_idempotent_on_random_raw_sequences(self, f2, c32):
        rng = random.Random(1)
        for pres in (f2, c32):
            for _ in range(300):
                raw = [rng.randrange(pres.alphabet_size) for _ in range(rng.randrange(30))]
                once = reduce(raw, pres)
                assert reduce(once.letters, pres) == once

    def test_letter_outside_alphabet(self, f2):
        with pytest.raises(MalformedInputError):
            reduce([99], f2)


class TestMultiply:
    def test_junction_cancellation(self, f2):
        assert multiply(w(f2, "ab"), w(f2, "Ba")) == w(f2, "aa")

    def test_inverse_law(self, f2):
        u = w(f2, "aBa")
        assert multiply(u, inverse(u)) == identity(f2)

    def test_cyclic_merge_through_junction(self, c23):
        u = w(c23, "1^1.2^1")
        v = w(c23, "2^1.3^1")
        assert multiply(u, v) == w(c23, "1^1.3^1")

    def test_unit_law(self, f2):
        u = w(f2, "abA")
        assert multiply(u, identity(f2)) == u
        assert multiply(identity(f2), u) == u

    def test_presentation_mismatch(self, f2, c23):
        with pytest.raises(DomainError):
            multiply(identity(f2), identity(c23))

    def test_group_axioms_random(self, f2, c32, c23):
        rng = random.Random(7)
        for pres in (f2, c32, c23):
            for _ in range(250):
                u = random_element(rng, pres, 16)
                v = random_element(rng, pres, 16)
                t = random_element(rng, pres, 16)
                assert multiply(multiply(u, v), t) == multiply(u, multiply(v, t))
                assert multiply(u, inverse(u)) == identity(pres)
                assert multiply(inverse(u), u) == identity(pres)


class TestInverse:
    def test_free_example(self, f2):
        assert inverse(w(f2, "ab")) == w(f2, "BA")

    def test_identity(self, f2):
        assert inverse(identity(f2)) == identity(f2)

    def test_cyclic_exponents_negate(self, c32):
        # (1^1 2^2)^{-1} = 2^1 1^2 in (Z/3)*(Z/3)
        assert inverse(w(c32, "1^1.2^2")) == w(c32, "2^1.1^2")

    def test_involutive_random(self, f2, c32):
        rng = random.Random(3)
        for pres in (f2, c32):
            for _ in range(200):
                u = random_element(rng, pres, 64)
                assert inverse(inverse(u)) == u
                assert length(inverse(u)) == length(u)


class TestLength:
    def test_identity(self, f2):
        assert length(identity(f2)) == 0

    def test_example(self, f2):
        assert length(w(f2, "aBa")) == 3

    def test_reduction_first(self, f2):
        assert length(multiply(w(f2, "a"), w(f2, "Ab"))) == 1

    def test_subadditive_and_symmetric_random(self, f2, c23):
        rng = random.Random(11)
        for pres in (f2, c23):
            for _ in range(300):
                u = random_element(rng, pres, 64)
                v = random_element(rng, pres, 64)
                assert length(multiply(u, v)) <= length(u) + length(v)
                assert length(inverse(u)) == length(u)


class TestPresentation:
    def test_parse_roundtrip(self):
        for text in ("free:2", "free:1", "cyclic:2:3", "cyclic:3:2"):
            assert Presentation.parse(text).descriptor() == text

    def test_parse_rejects_garbage(self):
        for text in ("free", "free:0", "cyclic:1:2", "cyclic:2", "dihedral:3", "free:65"):
            with pytest.raises(MalformedInputError):
                Presentation.parse(text)

    def test_word_str_roundtrip(self, f2, c32):
        rng = random.Random(5)
        for pres in (f2, c32):
            for _ in range(100):
                u = random_element(rng, pres, 10)
                assert pres.parse_word(pres.word_str(u.letters)) == u.letters

    def test_canonical_order_is_total(self, f2):
        rng = random.Random(9)
        elems = sorted({random_element(rng, f2, 6) for _ in range(80)})
        keys = [e.sort_key() for e in elems]
        assert keys == sorted(keys)
        assert all(keys[i] != keys[i + 1] for i in range(len(keys) - 1))
