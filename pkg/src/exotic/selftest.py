"""Quick invariant suite behind ``exotic selftest``: a fast subset of the
full test suite that exercises every subsystem once."""

from __future__ import annotations

import math
import random

import numpy as np

from . import growth
from .algebra import GroupFunction, convolve, involution, lp_norm, pair
from .cayley import BallIndex
from .opnorm import best_reduced_upper, lambda_p_lower, pf_star_upper_interp
from .posdef import gram_psd_check, make_haagerup_function
from .words import GroupElement, Presentation, identity, multiply


def _random_element(rng: random.Random, pres: Presentation, max_len: int) -> GroupElement:
    raw = [rng.randrange(pres.alphabet_size) for _ in range(rng.randrange(max_len + 1))]
    return GroupElement(pres, raw)


def run(verbose: bool = True) -> bool:
    checks: list[tuple[str, bool]] = []

    def check(name: str, ok: bool):
        checks.append((name, ok))
        if verbose:
            print(f"[selftest] {'pass' if ok else 'FAIL'}: {name}")

    f2 = Presentation.free(2)
    c23 = Presentation.cyclic(2, 3)
    rng = random.Random(0xE071C)

    ok = True
    for pres in (f2, c23):
        for _ in range(200):
            u = _random_element(rng, pres, 12)
            v = _random_element(rng, pres, 12)
            w = _random_element(rng, pres, 12)
            ok &= multiply(multiply(u, v), w) == multiply(u, multiply(v, w))
            ok &= multiply(u, u.inverse()) == identity(pres)
            ok &= len(multiply(u, v)) <= len(u) + len(v)
    check("group axioms on random triples", ok)

    ok = True
    for pres, kmax in ((f2, 5), (c23, 8)):
        levels = growth.spheres_up_to(pres, kmax)
        ok &= all(len(levels[k]) == growth.sphere_size(pres, k)
                  for k in range(kmax + 1))
    check("BFS sphere counts match closed forms", ok)

    s1 = GroupFunction.sphere_indicator(f2, 1)
    h = convolve(s1, s1)
    ok = h.value_at(()) == 4.0 and lp_norm(h, 1) == 16.0
    ok &= convolve(s1, GroupFunction.delta(f2)) == s1.expand()
    ok &= involution(involution(s1.expand())) == s1.expand()
    check("convolution unit law and involution", ok)

    table = BallIndex(f2, 4)
    elems = growth.ball(f2, 4)
    ok = True
    for u in elems:
        i = table.word_index(u.letters)
        ok &= table.index_word(i) == u.letters
        for b in range(f2.alphabet_size):
            j = table._left_mult_scalar(i, b)
            prod = multiply(GroupElement._make(f2, (b,)), u)
            ok &= (j == -1 and len(prod) > 4) or \
                  (j >= 0 and table.index_word(j) == prod.letters)
    check("ball index arithmetic vs word arithmetic", ok)

    phi = make_haagerup_function(f2, 0.3)
    report = gram_psd_check(phi, growth.ball(f2, 2))
    check("Gram matrix of phi_t is PSD", report.passed)

    est = lambda_p_lower(s1, 2.0, radius=4, iters=40)
    check("p=2 lower bound within the certified window",
          3.0 < est.value <= 2 * math.sqrt(3) + 1e-9)

    upper = pf_star_upper_interp(GroupFunction.ball_indicator(f2, 1), 4.0,
                                 best_reduced_upper(GroupFunction.ball_indicator(f2, 1)))
    check("interpolation upper bound below ell^1", upper.value < 5.0)

    threshold = growth.lp_membership_threshold(f2, 1.0)
    check("threshold p* = log 3", abs(threshold - math.log(3)) < 1e-12)

    failed = [name for name, good in checks if not good]
    if verbose and not failed:
        print(f"[selftest] all {len(checks)} checks passed")
    return not failed
