"""Sphere and ball enumeration, closed-form counting, growth rate, and
ell^p membership thresholds for the exponential-decay family
phi_t(s) = exp(-t |s|).

Closed forms (syllable-length spheres):
  free:d       |S_k| = 2d (2d-1)^{k-1}
  cyclic:m:d   |S_k| = d(m-1) ((d-1)(m-1))^{k-1}
Sphere sizes are exact Python integers; they overflow 64 bits near k = 40
for free:2.  Norm values are double precision and every finite sum is
compensated (math.fsum) in the canonical word order.
"""

from __future__ import annotations

import math
import os

from .errors import DomainError, ResourceLimitError
from .words import CYCLIC, FREE, GroupElement, Presentation, identity, multiply

ENUM_CAP_DEFAULT = 2_000_000
ENUM_CAP_ENV = "EXOTIC_MAX_ENUM"
ENUM_CAP_FLAG = "--max-enum"


def enumeration_cap() -> int:
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return ENUM_CAP_DEFAULT
    try:
        cap = int(raw)
    except ValueError as exc:
        raise DomainError(f"{ENUM_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise DomainError(f"{ENUM_CAP_ENV} must be positive")
    return cap


def first_sphere_size(pres: Presentation) -> int:
    return 2 * pres.d if pres.kind == FREE else pres.d * (pres.m - 1)


def sphere_ratio(pres: Presentation) -> int:
    """Exact branching ratio |S_{k+1}| / |S_k| for k >= 1 (0 when spheres die out)."""
    if pres.kind == FREE:
        return 2 * pres.d - 1
    return (pres.d - 1) * (pres.m - 1)


def sphere_size(pres: Presentation, k: int) -> int:
    if k < 0:
        raise DomainError("radius must be nonnegative")
    if k == 0:
        return 1
    if k == 1:
        return first_sphere_size(pres)
    return first_sphere_size(pres) * sphere_ratio(pres) ** (k - 1)


def ball_size(pres: Presentation, n: int) -> int:
    return sum(sphere_size(pres, k) for k in range(n + 1))


def growth_rate(pres: Presentation) -> float:
    """The limit of |B_n|^{1/n}: 2d-1 for free:d, (d-1)(m-1) for cyclic:m:d.
    Groups of subexponential growth (free:1, cyclic:2:2, finite factors)
    return 1."""
    return float(max(1, sphere_ratio(pres)))


def max_radius(pres: Presentation) -> int | None:
    """Largest k with a nonempty sphere, or None for infinite groups."""
    if sphere_ratio(pres) > 0:
        return None
    return 1 if first_sphere_size(pres) > 0 else 0


def spheres_up_to(pres: Presentation, n: int, cap: int | None = None) -> list[list[GroupElement]]:
    """Enumerate spheres S_0 .. S_n by breadth-first search over the Cayley
    graph (the oracle for the closed forms).  Each sphere is returned in
    canonical order."""
    if n < 0:
        raise DomainError("radius must be nonnegative")
    if cap is None:
        cap = enumeration_cap()
    predicted = ball_size(pres, n)
    if predicted > cap:
        raise ResourceLimitError(
            f"ball of radius {n} on {pres.descriptor()} has {predicted} elements, "
            f"over the enumeration cap {cap}; raise it with {ENUM_CAP_FLAG} "
            f"(env {ENUM_CAP_ENV})",
            flag=ENUM_CAP_FLAG, estimate=predicted, limit=cap)
    gens = [GroupElement._make(pres, (c,)) for c in range(pres.alphabet_size)]
    seen = {identity(pres)}
    levels = [[identity(pres)]]
    total = 1
    for _ in range(n):
        nxt = []
        for u in levels[-1]:
            for g in gens:
                v = multiply(u, g)
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        total += len(nxt)
        if total > cap:
            raise ResourceLimitError(
                f"enumeration exceeded the cap {cap}; raise it with {ENUM_CAP_FLAG}",
                flag=ENUM_CAP_FLAG, estimate=total, limit=cap)
        nxt.sort()
        levels.append(nxt)
    return levels


def sphere(pres: Presentation, k: int, cap: int | None = None) -> list[GroupElement]:
    """Exactly the reduced words of length k, each once, in canonical order."""
    return spheres_up_to(pres, k, cap)[k]


def ball(pres: Presentation, n: int, cap: int | None = None) -> list[GroupElement]:
    out: list[GroupElement] = []
    for level in spheres_up_to(pres, n, cap):
        out.extend(level)
    return out


def lp_membership_threshold(pres: Presentation, t: float) -> float:
    """The exponent p* = log(C)/t: phi_t lies in ell^p exactly for p > p*.
    Returns 0 when the growth rate C is 1 (membership for every p > 0)."""
    if not t > 0:
        raise DomainError(f"decay parameter t must be positive, got {t}")
    rate = growth_rate(pres)
    if rate == 1.0:
        return 0.0
    return math.log(rate) / t


def phi_lp_norm(pres: Presentation, t: float, p: float) -> float:
    """||phi_t||_p via the geometric series 1 + sum_k |S_k| e^{-ptk}; +inf when
    the term ratio C e^{-pt} reaches 1 (divergence is a value, not an error)."""
    if not t > 0:
        raise DomainError(f"decay parameter t must be positive, got {t}")
    if not p > 0:
        raise DomainError(f"exponent p must be positive, got {p}")
    if p == math.inf:
        return 1.0  # sup |phi_t| = phi_t(e)
    s1 = first_sphere_size(pres)
    r = sphere_ratio(pres)
    x = math.exp(-p * t)
    if r * x >= 1.0:
        return math.inf
    total = 1.0 + s1 * x / (1.0 - r * x)
    return total ** (1.0 / p)


def phi_lp_partial_sums(pres: Presentation, t: float, p: float, radius: int) -> list[float]:
    """Partial sums of sum_k |S_k| e^{-ptk} up to the given radius; the
    divergence/convergence oracle behind the threshold dichotomy."""
    if not t > 0 or not p > 0:
        raise DomainError("t and p must be positive")
    sums = []
    acc = 0.0
    for k in range(radius + 1):
        acc += float(sphere_size(pres, k)) * math.exp(-p * t * k)
        sums.append(acc)
    return sums
