import random

import pytest

from exotic.words import GroupElement, Presentation


@pytest.fixture(scope="session")
def f2():
    return Presentation.free(2)


@pytest.fixture(scope="session")
def f1():
    return Presentation.free(1)


@pytest.fixture(scope="session")
def c23():
    # three free factors of order 2
    return Presentation.cyclic(2, 3)


@pytest.fixture(scope="session")
def c32():
    return Presentation.cyclic(3, 2)


def random_element(rng: random.Random, pres: Presentation, max_len: int) -> GroupElement:
    raw = [rng.randrange(pres.alphabet_size)
           for _ in range(rng.randrange(max_len + 1))]
    return GroupElement(pres, raw)


def random_nonneg_function(rng: random.Random, pres: Presentation, ball,
                           max_terms: int = 8):
    """Random nonnegative sparse function supported in the given ball list."""
    from exotic.algebra import GroupFunction
    n = rng.randrange(1, max_terms + 1)
    support = rng.sample(ball, min(n, len(ball)))
    return GroupFunction.from_items(
        pres, {u: rng.uniform(0.1, 1.0) for u in support})
