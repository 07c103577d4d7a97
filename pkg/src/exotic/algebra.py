"""Finitely supported group functions: sparse and radial representations,
convolution, involution, plain and polynomially weighted ell^p norms, and
dual pairings.

Scalars are double precision reals.  Sparse supports are kept in the
canonical word order and every accumulation is compensated, so results are
independent of thread count and reproducible bit for bit.  Radial functions
sum c_k * chi_{S_k}; norms and pairings on them use the exact sphere-size
closed forms without materializing the support.  Radial convolution has no
closed form here: radial inputs are expanded to sparse form (subject to the
support cap) when convolved.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from . import growth
from .errors import DomainError, MalformedInputError, ResourceLimitError
from .words import GroupElement, Presentation, _concat_reduced, _invert_tuple

SUPPORT_CAP_DEFAULT = 5_000_000
SUPPORT_CAP_ENV = "EXOTIC_MAX_SUPPORT"
SUPPORT_CAP_FLAG = "--max-support"

Letters = tuple[int, ...]


def support_cap() -> int:
    raw = os.environ.get(SUPPORT_CAP_ENV)
    if raw is None:
        return SUPPORT_CAP_DEFAULT
    try:
        cap = int(raw)
    except ValueError as exc:
        raise DomainError(f"{SUPPORT_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise DomainError(f"{SUPPORT_CAP_ENV} must be positive")
    return cap


@dataclass(frozen=True)
class PolynomialWeight:
    """omega_d(s) = (1 + |s|)^d.  Negative degree gives the inverse weight."""

    degree: float

    def at_length(self, k: int) -> float:
        return float(1 + k) ** self.degree

    def __call__(self, u: GroupElement) -> float:
        return self.at_length(len(u))


def _sort_items(items: Iterable[tuple[Letters, float]]) -> list[tuple[Letters, float]]:
    return sorted(items, key=lambda kv: (len(kv[0]), kv[0]))


class GroupFunction:
    """A finitely supported scalar function on the group.

    ``rep`` is ``"sparse"`` (explicit word -> value map, no stored zeros) or
    ``"radial"`` (coefficients c_0..c_K of sum_k c_k chi_{S_k}).
    """

    __slots__ = ("presentation", "rep", "_data", "_coeffs")

    def __init__(self, presentation: Presentation, *, sparse=None, radial=None):
        if (sparse is None) == (radial is None):
            raise DomainError("exactly one of sparse/radial is required")
        object.__setattr__(self, "presentation", presentation)
        if sparse is not None:
            clean = {k: float(v) for k, v in sparse.items() if float(v) != 0.0}
            ordered = dict(_sort_items(clean.items()))
            object.__setattr__(self, "rep", "sparse")
            object.__setattr__(self, "_data", ordered)
            object.__setattr__(self, "_coeffs", None)
        else:
            coeffs = [float(c) for c in radial]
            while coeffs and coeffs[-1] == 0.0:
                coeffs.pop()
            max_r = growth.max_radius(presentation)
            if max_r is not None and len(coeffs) - 1 > max_r:
                raise DomainError(
                    f"radial radius {len(coeffs) - 1} exceeds the group diameter {max_r}")
            object.__setattr__(self, "rep", "radial")
            object.__setattr__(self, "_data", None)
            object.__setattr__(self, "_coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("GroupFunction is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_items(cls, pres: Presentation, items: Mapping) -> "GroupFunction":
        data: dict[Letters, float] = {}
        for key, val in items.items():
            if isinstance(key, GroupElement):
                if key.presentation != pres:
                    raise DomainError("element from a different presentation")
                letters = key.letters
            else:
                letters = GroupElement(pres, key).letters
            data[letters] = data.get(letters, 0.0) + float(val)
        return cls(pres, sparse=data)

    @classmethod
    def delta(cls, pres: Presentation, word=()) -> "GroupFunction":
        if isinstance(word, GroupElement):
            return cls.from_items(pres, {word: 1.0})
        if isinstance(word, str):
            word = pres.parse_word(word)
        return cls.from_items(pres, {tuple(word): 1.0})

    @classmethod
    def sphere_indicator(cls, pres: Presentation, k: int) -> "GroupFunction":
        return cls(pres, radial=[0.0] * k + [1.0])

    @classmethod
    def ball_indicator(cls, pres: Presentation, n: int) -> "GroupFunction":
        return cls(pres, radial=[1.0] * (n + 1))

    @classmethod
    def radial(cls, pres: Presentation, coeffs) -> "GroupFunction":
        return cls(pres, radial=coeffs)

    # -- views -------------------------------------------------------------

    @property
    def is_radial(self) -> bool:
        return self.rep == "radial"

    @property
    def radial_coeffs(self) -> tuple[float, ...]:
        if not self.is_radial:
            raise DomainError("not a radial function")
        return self._coeffs

    def items(self) -> list[tuple[Letters, float]]:
        """Support as (letters, value) pairs in canonical order (sparse only)."""
        if self.is_radial:
            raise DomainError("radial function; expand() first")
        return list(self._data.items())

    def support_size(self) -> int:
        if self.is_radial:
            return sum(growth.sphere_size(self.presentation, k)
                       for k, c in enumerate(self._coeffs) if c != 0.0)
        return len(self._data)

    def radius(self) -> int:
        if self.is_radial:
            return len(self._coeffs) - 1 if self._coeffs else 0
        return max((len(k) for k in self._data), default=0)

    def value_at(self, u: GroupElement | Letters) -> float:
        letters = u.letters if isinstance(u, GroupElement) else tuple(u)
        if self.is_radial:
            k = len(letters)
            return self._coeffs[k] if k < len(self._coeffs) else 0.0
        return self._data.get(letters, 0.0)

    def expand(self, cap: int | None = None) -> "GroupFunction":
        """Materialize a radial function as sparse (identity on sparse input)."""
        if not self.is_radial:
            return self
        if cap is None:
            cap = support_cap()
        size = self.support_size()
        if size > cap:
            raise ResourceLimitError(
                f"radial expansion needs {size} entries, over the support cap {cap}; "
                f"raise it with {SUPPORT_CAP_FLAG} (env {SUPPORT_CAP_ENV})",
                flag=SUPPORT_CAP_FLAG, estimate=size, limit=cap)
        levels = growth.spheres_up_to(self.presentation, self.radius(), cap=max(cap, size))
        data: dict[Letters, float] = {}
        for k, c in enumerate(self._coeffs):
            if c != 0.0:
                for u in levels[k]:
                    data[u.letters] = c
        return GroupFunction(self.presentation, sparse=data)

    def __eq__(self, other):
        if not isinstance(other, GroupFunction):
            return NotImplemented
        if self.presentation != other.presentation:
            return False
        if self.rep == other.rep:
            return (self._data, self._coeffs) == (other._data, other._coeffs)
        a = self.expand() if self.is_radial else self
        b = other.expand() if other.is_radial else other
        return a._data == b._data

    def __hash__(self):
        raise TypeError("GroupFunction is not hashable")

    def __add__(self, other: "GroupFunction") -> "GroupFunction":
        if self.presentation != other.presentation:
            raise DomainError("presentation mismatch")
        if self.is_radial and other.is_radial:
            n = max(len(self._coeffs), len(other._coeffs))
            a = list(self._coeffs) + [0.0] * (n - len(self._coeffs))
            for k, c in enumerate(other._coeffs):
                a[k] += c
            return GroupFunction(self.presentation, radial=a)
        a = self.expand() if self.is_radial else self
        b = other.expand() if other.is_radial else other
        data = dict(a._data)
        for k, v in b._data.items():
            data[k] = data.get(k, 0.0) + v
        return GroupFunction(self.presentation, sparse=data)

    def __rmul__(self, scalar: float) -> "GroupFunction":
        s = float(scalar)
        if self.is_radial:
            return GroupFunction(self.presentation, radial=[s * c for c in self._coeffs])
        return GroupFunction(self.presentation,
                             sparse={k: s * v for k, v in self._data.items()})

    def __repr__(self):
        if self.is_radial:
            return f"<GroupFunction radial {self._coeffs} on {self.presentation.descriptor()}>"
        return (f"<GroupFunction sparse |supp|={len(self._data)} "
                f"on {self.presentation.descriptor()}>")


def convolve(f: GroupFunction, g: GroupFunction, cap: int | None = None) -> GroupFunction:
    """(f * g)(s) = sum_u f(u) g(u^{-1} s).  Accumulates in the canonical word
    order with per-key compensated summation."""
    if f.presentation != g.presentation:
        raise DomainError("cannot convolve functions on different presentations")
    if cap is None:
        cap = support_cap()
    pres = f.presentation
    fs = f.expand(cap)
    gs = g.expand(cap)
    estimate = min(fs.support_size() * gs.support_size(),
                   growth.ball_size(pres, fs.radius() + gs.radius()))
    if estimate > cap:
        raise ResourceLimitError(
            f"convolution support estimate {estimate} exceeds the cap {cap}; "
            f"raise it with {SUPPORT_CAP_FLAG} (env {SUPPORT_CAP_ENV})",
            flag=SUPPORT_CAP_FLAG, estimate=estimate, limit=cap)
    acc: dict[Letters, float] = {}
    comp: dict[Letters, float] = {}
    g_items = gs.items()
    for u, cu in fs.items():
        for v, cv in g_items:
            w = _concat_reduced(pres, u, v)
            term = cu * cv
            c = comp.get(w, 0.0)
            y = term - c
            s = acc.get(w, 0.0)
            t = s + y
            comp[w] = (t - s) - y
            acc[w] = t
    return GroupFunction(pres, sparse=acc)


def involution(f: GroupFunction) -> GroupFunction:
    """f*(s) = conj(f(s^{-1})); scalars are real so only the argument flips."""
    if f.is_radial:
        return f  # spheres are symmetric
    pres = f.presentation
    return GroupFunction(pres, sparse={
        _invert_tuple(pres, u): v for u, v in f._data.items()})


def lp_norm(f: GroupFunction, p: float) -> float:
    """Counting-measure ell^p norm; p = inf gives the max absolute value.
    Radial inputs use sum_k |c_k|^p |S_k| without materialization."""
    if not p > 0:
        raise DomainError(f"exponent p must be positive, got {p}")
    return weighted_norm(f, p, PolynomialWeight(0.0))


def weighted_norm(f: GroupFunction, p: float, w: PolynomialWeight | float) -> float:
    """ell^p norm of the pointwise product f * omega_d."""
    if not p > 0:
        raise DomainError(f"exponent p must be positive, got {p}")
    if not isinstance(w, PolynomialWeight):
        w = PolynomialWeight(float(w))
    if f.is_radial:
        terms = [(abs(c) * w.at_length(k), growth.sphere_size(f.presentation, k))
                 for k, c in enumerate(f.radial_coeffs) if c != 0.0]
        if not terms:
            return 0.0
        if p == math.inf:
            return max(v for v, _ in terms)
        return math.fsum(v ** p * n for v, n in terms) ** (1.0 / p)
    vals = [abs(v) * w.at_length(len(u)) for u, v in f.items()]
    if not vals:
        return 0.0
    if p == math.inf:
        return max(vals)
    return math.fsum(v ** p for v in vals) ** (1.0 / p)


def pair(f: GroupFunction, phi) -> float:
    """Dual pairing <f, phi> = sum_s f(s) phi(s).

    ``phi`` is anything with a ``value(element) -> float`` method; radial
    evaluators additionally expose ``is_radial``/``radial_value(k)`` and pair
    with radial f through the closed form sum_k c_k phi(k) |S_k|.  A plain
    callable on group elements is also accepted (sparse f only).
    """
    pres = f.presentation
    phi_radial = getattr(phi, "is_radial", False)
    if f.is_radial:
        if not phi_radial:
            return pair(f.expand(), phi)
        return math.fsum(c * phi.radial_value(k) * growth.sphere_size(pres, k)
                         for k, c in enumerate(f.radial_coeffs) if c != 0.0)
    if phi_radial:
        return math.fsum(v * phi.radial_value(len(u)) for u, v in f.items())
    evaluate = phi.value if hasattr(phi, "value") else phi
    return math.fsum(v * evaluate(GroupElement._make(pres, u)) for u, v in f.items())


def parse_function(pres: Presentation, text: str) -> GroupFunction:
    """Function descriptors: ``delta:<word>``, ``sphere:<k>``, ``ball:<k>``,
    ``radial:<c0,c1,...>``."""
    head, sep, tail = text.strip().partition(":")
    if not sep:
        raise MalformedInputError(f"bad function descriptor {text!r}")
    try:
        if head == "delta":
            return GroupFunction.delta(pres, tail)
        if head == "sphere":
            return GroupFunction.sphere_indicator(pres, int(tail))
        if head == "ball":
            return GroupFunction.ball_indicator(pres, int(tail))
        if head == "radial":
            return GroupFunction.radial(pres, [float(c) for c in tail.split(",")])
    except (ValueError, DomainError) as exc:
        raise MalformedInputError(f"bad function descriptor {text!r}: {exc}") from exc
    raise MalformedInputError(
        f"unknown function kind {head!r}; expected delta/sphere/ball/radial")
