"""Certified bounds for convolution-operator norms.

Lower bounds for the lambda_p operator norm never use output truncation: a
test vector g supported in the radius-R ball is convolved exactly (f * g is
evaluated on its full support), so every reported Rayleigh quotient
||f * g||_p / ||g||_p is a true lower bound whatever R is.  Duality-map
(Boyd-style) iteration only generates candidate vectors; certification is
always the quotient of a concrete vector.  Values are running maxima over
radii 1..R and iterations, hence nondecreasing in both budgets.

Upper bounds come from three certified routes: the sphere-decomposition
bound sum_k (k+1) ||f . chi_{S_k}||_2, the trivial ell^1 triangle bound, and,
for radial functions on tree families, functional calculus in the radial
subalgebra (the sphere indicators are a polynomial family in chi_{S_1},
whose spectrum lies in [-2 sqrt(q), 2 sqrt(q)] on a (q+1)-regular tree).
Interpolation between the reduced norm (p=2) and ell^1 (p=inf) then bounds
the symmetrized p-pseudofunction norm for any p >= 2.

The Okayasu sequence ||(f* . f)^{*n}||_q^{1/2n} is reported term by term but
flagged heuristic: only its liminf is a certified upper bound.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field

import mpmath
import numpy as np

from . import growth
from .algebra import GroupFunction, convolve, involution, lp_norm, weighted_norm
from .cayley import BallIndex
from .errors import DomainError
from .words import CYCLIC, FREE, Presentation, _invert_tuple

DEFAULT_RADIUS = 12
DEFAULT_ITERS = 200
DEFAULT_SEED = 0xE071C  # fixed default; reproducibility over cleverness

CERTIFIED_LOWER = "certified_lower"
CERTIFIED_UPPER = "certified_upper"
HEURISTIC = "heuristic"

_CHAIN_STALL = 25  # stop a duality-map chain after this many iterations without gain


def conjugate(p: float) -> float:
    """The exponent q with 1/p + 1/q = 1; conjugate(1) = inf, conjugate(2) = 2."""
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise DomainError(f"exponent must lie in [1, inf], got {p}")
    if p == 1.0:
        return math.inf
    if p == math.inf:
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True)
class Target:
    kind: str  # lambda_p | pf_star | reduced_cstar | cstar_lp | ell_p
    p: float | None = None

    def to_json(self):
        return {"kind": self.kind, "p": self.p}


@dataclass(frozen=True)
class NormEstimate:
    """A bound value tagged with its direction, target norm, method, and every
    truncation/iteration knob that produced it."""

    value: float
    direction: str
    target: Target
    method: str
    params: dict = field(default_factory=dict)

    def to_json(self):
        return {"value": self.value, "direction": self.direction,
                "target": self.target.to_json(), "method": self.method,
                "params": dict(self.params)}


def _p_bits(p: float) -> int:
    return int.from_bytes(struct.pack("<d", float(p)), "little")


def lambda_p_lower(f: GroupFunction, p: float, radius: int = DEFAULT_RADIUS,
                   iters: int = DEFAULT_ITERS, seed: int = DEFAULT_SEED,
                   table_cap: int | None = None) -> NormEstimate:
    """Certified lower bound for ||lambda_p(f)||.

    Test vectors per radius r = 1..radius: delta_e, the ball indicator,
    seeded random nonnegative vectors, and duality-map iterates started from
    delta_e and from the ball indicator.  For p = 1 the delta vector already
    attains the norm; for p = inf a sign-matched vector does.
    """
    q = conjugate(p)
    if radius < 1:
        raise DomainError("radius must be at least 1")
    from ._backend import BACKEND_NAME, kernels as K

    pres = f.presentation
    fs = f.expand()
    items = fs.items()
    base_params = {"p": p, "radius": radius, "iters": iters, "seed": seed,
                   "backend": BACKEND_NAME}
    if not items:
        return NormEstimate(0.0, CERTIFIED_LOWER, Target("lambda_p", p),
                            "ball-rayleigh", base_params)
    rho = fs.radius()
    table = BallIndex(pres, radius + rho, table_cap)
    base_params["table_radius"] = table.radius
    coeffs = np.array([v for _, v in items], dtype=np.float64)
    n_words = len(items)
    fwd = np.empty((n_words, table.size), dtype=np.int64)
    adj = np.empty((n_words, table.size), dtype=np.int64)
    for j, (u, _) in enumerate(items):
        fwd[j] = table.compose_left_word(_invert_tuple(pres, u))  # s -> u^{-1} s
        adj[j] = table.compose_left_word(u)                       # s -> u s

    total = table.size
    g_buf = np.zeros(total)
    h_buf = np.zeros(total)
    y_buf = np.zeros(total)
    z_buf = np.zeros(total)
    best = 0.0

    def quotient(n_g: int, n_h: int) -> float:
        gn = K.lp_norm_slice(g_buf, n_g, p)
        if gn == 0.0:
            return 0.0
        K.conv_apply(h_buf, n_h, fwd, coeffs, g_buf)
        return K.lp_norm_slice(h_buf, n_h, p) / gn

    def boyd_chain(start_delta: bool, n_g: int, n_h: int) -> float:
        chain_best = 0.0
        g_buf[:n_g] = 0.0
        if start_delta:
            g_buf[0] = 1.0
        else:
            g_buf[:n_g] = 1.0
        nrm = K.lp_norm_slice(g_buf, n_g, p)
        g_buf[:n_g] /= nrm
        last_gain = 0
        for it in range(iters):
            K.conv_apply(h_buf, n_h, fwd, coeffs, g_buf)
            val = K.lp_norm_slice(h_buf, n_h, p)  # ||g||_p == 1
            if val > chain_best * (1.0 + 1e-14):
                chain_best = val
                last_gain = it
            if it - last_gain >= _CHAIN_STALL or val == 0.0:
                break
            if p == 2.0:
                # power iteration: the duality maps are identities up to scale
                K.conv_apply(z_buf, n_g, adj, coeffs, h_buf)
            else:
                K.signed_pow_scaled(y_buf, h_buf, n_h, p - 1.0)
                K.conv_apply(z_buf, n_g, adj, coeffs, y_buf)
            K.signed_pow_scaled(g_buf, z_buf, n_g, q - 1.0)
            nrm = K.lp_norm_slice(g_buf, n_g, p)
            if nrm == 0.0:
                break
            g_buf[:n_g] /= nrm
        return chain_best

    for r in range(1, min(radius, table.radius) + 1):
        n_g = table.size_at(r)
        n_h = table.size_at(r + rho)

        g_buf[:n_g] = 0.0
        g_buf[0] = 1.0
        best = max(best, quotient(n_g, n_h))

        g_buf[:n_g] = 1.0
        best = max(best, quotient(n_g, n_h))

        if p == math.inf:
            # sign-matched vector: (f*g)(e) = sum |f(u)| once g(u^{-1}) = sign f(u)
            g_buf[:n_g] = 0.0
            for u, v in items:
                if len(u) <= r:
                    g_buf[table.word_index(_invert_tuple(pres, u))] = math.copysign(1.0, v)
            best = max(best, quotient(n_g, n_h))

        rng = np.random.default_rng([seed, r, _p_bits(p)])
        for _ in range(2):
            g_buf[:n_g] = rng.random(n_g)
            best = max(best, quotient(n_g, n_h))

        if p != 1.0 and p != math.inf:
            best = max(best, boyd_chain(True, n_g, n_h))
            best = max(best, boyd_chain(False, n_g, n_h))

    return NormEstimate(best, CERTIFIED_LOWER, Target("lambda_p", p),
                        "ball-rayleigh", base_params)


def pf_star_lower(f: GroupFunction, p: float, radius: int = DEFAULT_RADIUS,
                  iters: int = DEFAULT_ITERS, seed: int = DEFAULT_SEED,
                  table_cap: int | None = None) -> NormEstimate:
    """Certified lower bound for the symmetrized p-pseudofunction norm,
    max(||lambda_p(f)||, ||lambda_q(f)||); symmetric in p <-> q by construction."""
    q = conjugate(p)
    lo_p = lambda_p_lower(f, p, radius, iters, seed, table_cap)
    lo_q = lo_p if q == p else lambda_p_lower(f, q, radius, iters, seed, table_cap)
    params = {"p": p, "q": q, "radius": radius, "iters": iters, "seed": seed,
              "lambda_p_value": lo_p.value, "lambda_q_value": lo_q.value}
    return NormEstimate(max(lo_p.value, lo_q.value), CERTIFIED_LOWER,
                        Target("pf_star", p), "pf-star-max", params)


def reduced_upper_haagerup(f: GroupFunction) -> NormEstimate:
    """Sphere-decomposed upper bound sum_k (k+1) ||f . chi_{S_k}||_2 for the
    reduced norm on the free families.  For cyclic free products the (k+1)
    constant is an explicit auditable choice checked empirically against the
    certified lower brackets; the estimate is flagged ``family_checked``."""
    pres = f.presentation
    if pres.kind not in (FREE, CYCLIC):
        raise DomainError("unsupported family")
    if f.is_radial:
        value = math.fsum(
            (k + 1) * abs(c) * math.sqrt(float(growth.sphere_size(pres, k)))
            for k, c in enumerate(f.radial_coeffs) if c != 0.0)
    else:
        by_len: dict[int, list[float]] = {}
        for u, v in f.items():
            by_len.setdefault(len(u), []).append(v * v)
        value = math.fsum((k + 1) * math.sqrt(math.fsum(sq))
                          for k, sq in sorted(by_len.items()))
    params = {"family_checked": pres.kind == CYCLIC}
    return NormEstimate(value, CERTIFIED_UPPER, Target("reduced_cstar"),
                        "sphere-haagerup", params)


def reduced_upper_l1(f: GroupFunction) -> NormEstimate:
    """||f||_{C*_r} <= ||f||_1 (triangle inequality over translations)."""
    return NormEstimate(lp_norm(f, 1.0), CERTIFIED_UPPER, Target("reduced_cstar"),
                        "l1-triangle", {})


def _is_tree_family(pres: Presentation) -> bool:
    return (pres.kind == FREE or (pres.kind == CYCLIC and pres.m == 2)) \
        and growth.sphere_ratio(pres) >= 1


def sphere_polynomial_coeffs(pres: Presentation, k_max: int) -> list[list[int]]:
    """Integer coefficients of the polynomials P_k with chi_{S_k} = P_k(chi_{S_1})
    in the radial subalgebra of a tree family: P_0 = 1, P_1 = x,
    x P_1 = P_2 + b0, x P_k = P_{k+1} + q P_{k-1} for k >= 2, where b0 = |S_1|
    and q is the branching ratio."""
    if not _is_tree_family(pres):
        raise DomainError("sphere polynomials need a tree family (free:d or cyclic:2:d)")
    b0 = growth.first_sphere_size(pres)
    q = growth.sphere_ratio(pres)
    polys = [[1], [0, 1]]
    for k in range(1, k_max):
        prev, cur = polys[k - 1], polys[k]
        nxt = [0] * (k + 2)
        for i, c in enumerate(cur):
            nxt[i + 1] += c
        drop = b0 if k == 1 else q
        for i, c in enumerate(prev):
            nxt[i] -= drop * c
        polys.append(nxt)
    return polys[:k_max + 1]


def reduced_upper_radial(f: GroupFunction, grid_points: int = 8192) -> NormEstimate:
    """Functional-calculus upper bound for radial f on a tree family:
    ||sum c_k P_k(chi_{S_1})|| <= sup_{|x| <= 2 sqrt(q)} |sum c_k P_k(x)|.

    The sup over the interval is certified from a theta-grid maximum of the
    degree-K trigonometric polynomial x = 2 sqrt(q) cos(theta) via the
    Bernstein derivative bound: sup <= grid_max / (1 - K h / 2)."""
    pres = f.presentation
    if not f.is_radial:
        raise DomainError("functional-calculus bound needs a radial function")
    if not _is_tree_family(pres):
        raise DomainError("functional-calculus bound needs a tree family")
    coeffs = f.radial_coeffs
    if not coeffs:
        return NormEstimate(0.0, CERTIFIED_UPPER, Target("reduced_cstar"),
                            "radial-functional-calculus", {})
    kdeg = len(coeffs) - 1
    q = growth.sphere_ratio(pres)
    b0 = growth.first_sphere_size(pres)
    if kdeg == 0:
        return NormEstimate(abs(coeffs[0]), CERTIFIED_UPPER, Target("reduced_cstar"),
                            "radial-functional-calculus",
                            {"q": q, "degree": 0, "inflation": 1.0})
    m_grid = max(grid_points, 64 * kdeg * kdeg)
    theta = np.linspace(0.0, math.pi, m_grid + 1)
    x = 2.0 * math.sqrt(q) * np.cos(theta)
    p_prev = np.ones_like(x)
    p_cur = x.copy()
    acc = coeffs[0] * p_prev + coeffs[1] * p_cur
    for k in range(1, kdeg):
        drop = b0 if k == 1 else q
        p_next = x * p_cur - drop * p_prev
        acc += coeffs[k + 1] * p_next
        p_prev, p_cur = p_cur, p_next
    grid_max = float(np.max(np.abs(acc)))
    h = math.pi / m_grid
    slack = kdeg * h / 2.0
    if slack >= 0.5:
        raise DomainError("grid too coarse for the requested degree")
    inflation = 1.0 / (1.0 - slack)
    return NormEstimate(grid_max * inflation, CERTIFIED_UPPER, Target("reduced_cstar"),
                        "radial-functional-calculus",
                        {"q": q, "degree": kdeg, "grid_points": m_grid,
                         "inflation": inflation})


def best_reduced_upper(f: GroupFunction) -> NormEstimate:
    """Sharpest available certified upper bound for the reduced norm."""
    candidates = [reduced_upper_haagerup(f), reduced_upper_l1(f)]
    if f.is_radial and _is_tree_family(f.presentation):
        candidates.append(reduced_upper_radial(f))
    return min(candidates, key=lambda est: est.value)


def pf_star_upper_interp(f: GroupFunction, p: float,
                         reduced_upper: NormEstimate) -> NormEstimate:
    """Interpolation upper bound reduced^{2/p} ||f||_1^{1-2/p} for the
    symmetrized p-pseudofunction norm, p >= 2 (p = inf gives ||f||_1).  The
    same value bounds the L^p-C*-norm, which the pf_star norm dominates."""
    p = float(p)
    if not 2.0 <= p:
        raise DomainError(f"interpolation upper bound needs p >= 2, got {p}")
    if reduced_upper.direction != CERTIFIED_UPPER or \
            reduced_upper.target.kind != "reduced_cstar":
        raise DomainError("reduced_upper must be a certified upper bound for the "
                          "reduced norm")
    l1 = lp_norm(f, 1.0)
    expo = 2.0 / p  # 0.0 at p = inf
    value = reduced_upper.value ** expo * l1 ** (1.0 - expo)
    params = {"p": p, "reduced_value": reduced_upper.value,
              "reduced_method": reduced_upper.method, "l1": l1}
    return NormEstimate(value, CERTIFIED_UPPER, Target("pf_star", p),
                        "interpolation-2-inf", params)


def as_cstar_lp_upper(est: NormEstimate, p: float) -> NormEstimate:
    """Retarget a pf_star (or reduced, for p=2) certified upper bound at the
    L^p-C*-norm it dominates."""
    if est.direction != CERTIFIED_UPPER:
        raise DomainError("need a certified upper bound")
    if est.target.kind == "pf_star" and est.target.p == p:
        pass
    elif est.target.kind == "reduced_cstar" and p == 2.0:
        pass
    else:
        raise DomainError(f"estimate for {est.target} does not cover cstar_lp({p})")
    return NormEstimate(est.value, CERTIFIED_UPPER, Target("cstar_lp", p),
                        est.method, dict(est.params))


@dataclass(frozen=True)
class OkayasuSequence:
    p: float
    q: float
    n_max: int
    terms: tuple[tuple[int, float], ...]
    truncated: bool
    direction: str = HEURISTIC
    params: dict = field(default_factory=dict)

    @property
    def values(self) -> list[float]:
        return [v for _, v in self.terms]

    def to_json(self):
        return {"p": self.p, "q": self.q, "n_max": self.n_max,
                "terms": [{"n": n, "value": v} for n, v in self.terms],
                "truncated": self.truncated, "direction": self.direction,
                "params": dict(self.params)}


def okayasu_upper_seq(f: GroupFunction, p: float, n_max: int,
                      cap: int | None = None) -> OkayasuSequence:
    """The sequence ||(f* . f)^{*n}||_q^{1/2n}, q conjugate to p, by repeated
    sparse convolution.  Heuristic: only the liminf certifiably dominates the
    L^p-C*-norm, so certificates never use individual terms.  If the support
    cap is hit the partial sequence is returned with a truncation marker."""
    p = float(p)
    if not 2.0 <= p:
        raise DomainError(f"okayasu sequence needs p >= 2, got {p}")
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    q = conjugate(p)
    terms: list[tuple[int, float]] = []
    truncated = False
    try:
        h = convolve(involution(f), f, cap)
        power = None
        for n in range(1, n_max + 1):
            power = h if power is None else convolve(power, h, cap)
            terms.append((n, lp_norm(power, q) ** (1.0 / (2 * n))))
    except Exception as exc:
        from .errors import ResourceLimitError
        if isinstance(exc, ResourceLimitError):
            truncated = True
        else:
            raise
    return OkayasuSequence(p, q, n_max, tuple(terms), truncated,
                           params={"support_cap": cap})


def weighted_rd_upper(f: GroupFunction, p: float, d: float) -> NormEstimate:
    """Heuristic relative bound ||f||_{pf*_p} <~ ||f . omega_{2d/p}||_q with q
    conjugate to p: the embedding constant is not pinned down, so this is for
    ratio studies only and never enters certificates.  d > 3/2 is the safe
    choice on free families (their rapid-decay degree is at most 3/2)."""
    p = float(p)
    if not 2.0 <= p:
        raise DomainError(f"weighted bound needs p >= 2, got {p}")
    q = conjugate(p)
    wd = 0.0 if p == math.inf else 2.0 * d / p
    value = weighted_norm(f, q, wd)
    return NormEstimate(value, HEURISTIC, Target("pf_star", p),
                        "weighted-rd-embedding",
                        {"d": d, "q": q, "weight_degree": wd,
                         "note": "embedding constant unknown"})


@dataclass(frozen=True)
class RdMembershipReport:
    required_degree: float
    entries: tuple[tuple[float, float], ...]  # (degree d, ||phi . omega_d^{-1}||_p)
    member: bool
    params: dict = field(default_factory=dict)

    def to_json(self):
        return {"required_degree": self.required_degree,
                "entries": [{"d": d, "norm": v} for d, v in self.entries],
                "member": self.member, "params": dict(self.params)}


def _radial_series_lp(pres: Presentation, radial_value, p: float, degree: float,
                      probe: int = 400) -> float:
    """(sum_k |phi(k)|^p (1+k)^{degree p} |S_k|)^{1/p} for a radial evaluator,
    classified by the term ratio test; +inf on divergence."""
    s1 = growth.first_sphere_size(pres)
    ratio = growth.sphere_ratio(pres)
    mr = growth.max_radius(pres)

    def term(k: int) -> float:
        return (abs(radial_value(k)) ** p * float(1 + k) ** (degree * p)
                * float(growth.sphere_size(pres, k)))

    if mr is not None:  # finite support
        return math.fsum(term(k) for k in range(mr + 1)) ** (1.0 / p)
    terms = [term(k) for k in range(probe + 1)]
    acc = math.fsum(terms)
    tail_ratio = terms[-1] / terms[-2] if terms[-2] != 0.0 else 0.0
    if terms[-1] > 0.0 and tail_ratio >= 1.0 - 1e-12:
        return math.inf
    if terms[-1] > 0.0:
        acc += terms[-1] * tail_ratio / (1.0 - tail_ratio)
    return acc ** (1.0 / p)


def rd_membership(phi, p: float, rd_bound: float = 1.5,
                  grid: list[float] | None = None) -> RdMembershipReport:
    """Check phi against the weighted-ell^p membership window: the positive
    functional characterization needs ||phi . omega_d^{-1}||_p finite for
    every d > (2/p) rd(G).  Reports the norms over a grid of such degrees;
    ``member`` means all were finite."""
    p = float(p)
    if not p >= 1.0:
        raise DomainError("p must be at least 1")
    if not getattr(phi, "is_radial", False):
        raise DomainError("membership report needs a radial function")
    required = (2.0 / p) * rd_bound
    if grid is None:
        grid = [required + step for step in (0.01, 0.1, 0.5, 1.0)]
    if any(d <= required for d in grid):
        raise DomainError(f"grid degrees must exceed the required degree {required}")
    pres = phi.presentation
    entries = []
    for d in grid:
        # exact ratio classification for the exponential family
        t = getattr(phi, "t", None)
        if t is not None:
            rho = growth.growth_rate(pres) * math.exp(-t * p)
            if rho > 1.0:
                entries.append((d, math.inf))
                continue
            if rho == 1.0:
                dp = d * p
                if dp <= 1.0:
                    entries.append((d, math.inf))
                    continue
                s1 = growth.first_sphere_size(pres)
                ratio = growth.sphere_ratio(pres)
                val = 1.0 + (s1 / ratio) * float(mpmath.zeta(dp) - 1)
                entries.append((d, val ** (1.0 / p)))
                continue
        entries.append((d, _radial_series_lp(pres, phi.radial_value, p, -d)))
    member = all(math.isfinite(v) for _, v in entries)
    return RdMembershipReport(required, tuple(entries), member,
                              params={"p": p, "rd_bound": rd_bound})
