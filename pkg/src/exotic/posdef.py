"""The exponential-decay positive definite family phi_t(s) = exp(-t |s|),
Gram PSD sanity checks, and state-based certified lower bounds for the
L^p-C*-norm.

Word length is conditionally negative definite on these families, so phi_t is
normalized positive definite for every t > 0.  When phi_t is certified inside
ell^p (strictly p > p* = log(C)/t), pairing against it is a state evaluation
and |<f, phi_t>| is a certified lower bound for ||f||_{C*_{L^p}}; the same
value also bounds the symmetrized p-pseudofunction norm from below, which
dominates it.  The boundary p = p* is rejected: phi_t then lies in every
ell^{p+eps} but not in ell^p itself, and that is surfaced as the distinct
``member_of_intersection`` flag on the error rather than silently accepted.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from . import growth
from .algebra import GroupFunction, pair
from .errors import DomainError, MembershipError, ResourceLimitError
from .opnorm import CERTIFIED_LOWER, NormEstimate, Target
from .words import GroupElement, Presentation, multiply

GRAM_SAMPLE_CAP = 2000


class PosDefFunction:
    """A normalized positive definite evaluation rule.

    ``HaagerupExp(t)`` is the radial family exp(-t |s|); ``custom`` wraps an
    arbitrary rule whose positive definiteness is checked, not assumed."""

    __slots__ = ("presentation", "kind", "t", "_rule", "_radial_rule")

    def __init__(self, presentation: Presentation, kind: str, t: float = 0.0,
                 rule: Callable[[GroupElement], float] | None = None,
                 radial_rule: Callable[[int], float] | None = None):
        self.presentation = presentation
        self.kind = kind
        self.t = t
        self._rule = rule
        self._radial_rule = radial_rule

    @classmethod
    def custom(cls, presentation: Presentation,
               rule: Callable[[GroupElement], float],
               radial_rule: Callable[[int], float] | None = None) -> "PosDefFunction":
        return cls(presentation, "custom", rule=rule, radial_rule=radial_rule)

    @property
    def is_radial(self) -> bool:
        return self.kind == "haagerup_exp" or self._radial_rule is not None

    def radial_value(self, k: int) -> float:
        if self.kind == "haagerup_exp":
            return math.exp(-self.t * k)
        if self._radial_rule is None:
            raise DomainError("not a radial evaluation rule")
        return float(self._radial_rule(k))

    def value(self, u: GroupElement) -> float:
        if self.kind == "haagerup_exp":
            return math.exp(-self.t * len(u))
        if self._radial_rule is not None:
            return float(self._radial_rule(len(u)))
        return float(self._rule(u))

    def __repr__(self):
        if self.kind == "haagerup_exp":
            return f"<PosDefFunction exp(-{self.t}|s|) on {self.presentation.descriptor()}>"
        return f"<PosDefFunction custom on {self.presentation.descriptor()}>"


def make_haagerup_function(pres: Presentation, t: float) -> PosDefFunction:
    """phi_t(s) = exp(-t |s|); requires t > 0 so that phi decays."""
    if not t > 0:
        raise DomainError(f"decay parameter t must be positive, got {t}")
    return PosDefFunction(pres, "haagerup_exp", t=float(t))


class GramReport:
    __slots__ = ("min_eigenvalue", "passed", "dim", "tol")

    def __init__(self, min_eigenvalue: float, passed: bool, dim: int, tol: float):
        self.min_eigenvalue = min_eigenvalue
        self.passed = passed
        self.dim = dim
        self.tol = tol

    def to_json(self):
        return {"min_eigenvalue": self.min_eigenvalue, "pass": self.passed,
                "dim": self.dim, "tol": self.tol}

    def __repr__(self):
        state = "pass" if self.passed else "FAIL"
        return f"<GramReport {state} dim={self.dim} min_eig={self.min_eigenvalue:.3e}>"


def gram_psd_check(phi: PosDefFunction, sample, tol: float | None = None) -> GramReport:
    """Assemble the Gram matrix M_ij = phi(s_i^{-1} s_j) over the sample and
    report its minimum eigenvalue; passes iff it is >= -tol.  The default
    tolerance 1e-8 * dim covers symmetric eigensolver backward error."""
    elems = list(sample)
    if len(elems) > GRAM_SAMPLE_CAP:
        raise ResourceLimitError(
            f"Gram sample of {len(elems)} exceeds the cap {GRAM_SAMPLE_CAP}",
            flag="(sample size)", estimate=len(elems), limit=GRAM_SAMPLE_CAP)
    n = len(elems)
    if tol is None:
        tol = 1e-8 * max(n, 1)
    if n == 0:
        return GramReport(0.0, True, 0, tol)
    inv = [u.inverse() for u in elems]
    m = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            m[i, j] = phi.value(multiply(inv[i], elems[j]))
    min_eig = float(np.linalg.eigvalsh(m)[0])
    return GramReport(min_eig, min_eig >= -tol, n, tol)


def state_lower_bound(f: GroupFunction, phi: PosDefFunction, p: float) -> NormEstimate:
    """Certified lower bound |<f, phi>| for ||f||_{C*_{L^p}}.

    Requires phi from the exponential family (its ell^p membership is
    certified by the growth threshold) with strict p > p*.  The returned
    estimate records the membership evidence (t, p*, p); the value also
    bounds ||f||_{pf*_p} from below since that norm dominates the target.
    """
    if f.presentation != phi.presentation:
        raise DomainError("function and state live on different presentations")
    if phi.kind != "haagerup_exp":
        raise DomainError("only the exponential family carries a certified "
                          "ell^p membership threshold")
    p = float(p)
    if not p >= 1.0:
        raise DomainError("p must be at least 1")
    p_star = growth.lp_membership_threshold(f.presentation, phi.t)
    if p == p_star:
        raise MembershipError(
            f"p = p* = {p_star}: phi_t lies in every ell^(p+eps) but membership "
            "at the threshold itself is not certified",
            p_star=p_star, member_of_intersection=True)
    if p < p_star:
        raise MembershipError(
            f"phi_t is not in ell^{p}: threshold p* = {p_star}",
            p_star=p_star, member_of_intersection=False)
    value = abs(pair(f, phi))
    params = {"t": phi.t, "p_star": p_star, "p": p, "also_bounds": "pf_star"}
    return NormEstimate(value, CERTIFIED_LOWER, Target("cstar_lp", p),
                        "state-pairing", params)
