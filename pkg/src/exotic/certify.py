"""Assemble certified lower/upper pairs into separation certificates.

A certificate pairs one certified lower bound against one certified upper
bound with an explicit positive margin; heuristic estimates never enter.
Every certificate embeds enough provenance (sphere radius, decay parameter,
sphere sizes, interpolation inputs) for a third party to re-derive both
sides without rerunning any search, and is revalidated here with exact
integer sphere sizes and 100-bit floats before being declared valid.

Distinctness witnesses use the radial closed forms exclusively (no
enumeration), so sphere radii up to 40 are fine.  The sphere-decomposition
upper bound is used on the p' side, matching the certificate arithmetic a
reviewer can reproduce by hand.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import mpmath

from . import growth
from .algebra import GroupFunction, lp_norm
from .errors import DomainError
from .opnorm import (CERTIFIED_LOWER, CERTIFIED_UPPER, HEURISTIC, NormEstimate,
                     Target, as_cstar_lp_upper, best_reduced_upper,
                     lambda_p_lower, pf_star_upper_interp,
                     reduced_upper_haagerup)
from .posdef import make_haagerup_function, state_lower_bound
from .words import Presentation

SCHEMA_VERSION = 1
MARGIN_RTOL = 1e-6  # margin must exceed this times max(lower, upper)
T_SLACK = 0.99      # admissible decay parameters satisfy t >= log(C) / (0.99 p)

_MP_DPS = 40  # ~130 bits, comfortably past 80-bit revalidation


@dataclass(frozen=True)
class Certificate:
    kind: str                 # "distinctness" | "hulanicki"
    group: str
    witness: str
    p: float
    p_prime: float | None
    phi_params: dict | None
    lower: NormEstimate
    upper: NormEstimate
    margin: float
    valid: bool
    revalidation: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    @property
    def margin_ratio(self) -> float:
        return self.lower.value / self.upper.value if self.upper.value else math.inf

    def to_json(self):
        return {"schema_version": self.schema_version, "kind": self.kind,
                "group": self.group, "witness": self.witness, "p": self.p,
                "p_prime": self.p_prime, "phi": self.phi_params,
                "lower": self.lower.to_json(), "upper": self.upper.to_json(),
                "margin": self.margin, "margin_ratio": self.margin_ratio,
                "valid": self.valid, "revalidation": dict(self.revalidation)}


@dataclass(frozen=True)
class NotFoundReport:
    kind: str
    group: str
    reason: str
    best_margin: float | None = None
    best_cell: dict | None = None
    searched: int = 0

    def to_json(self):
        return {"kind": self.kind, "group": self.group, "found": False,
                "reason": self.reason, "best_margin": self.best_margin,
                "best_cell": self.best_cell, "searched": self.searched}


def _margin_ok(lower: float, upper: float) -> bool:
    return lower - upper > MARGIN_RTOL * max(lower, upper)


def _check_certified(*ests: NormEstimate) -> None:
    for est in ests:
        if est.direction == HEURISTIC:
            raise DomainError("certificates must not contain heuristic estimates")


# -- distinctness ----------------------------------------------------------


def _revalidate_distinctness(pres: Presentation, p: float, p_prime: float,
                             t: float, k: int) -> dict:
    """Recompute both sides with exact sphere sizes and 40-digit floats."""
    with mpmath.workdps(_MP_DPS):
        s_k = mpmath.mpf(growth.sphere_size(pres, k))
        lower = s_k * mpmath.e ** (-mpmath.mpf(t) * k)
        reduced = (k + 1) * mpmath.sqrt(s_k)
        if p_prime == 2.0:
            upper = reduced
        else:
            expo = mpmath.mpf(2) / mpmath.mpf(p_prime)
            upper = reduced ** expo * s_k ** (1 - expo)
        margin = lower - upper
        return {"margin_sign_ok": bool(margin > 0),
                "lower_hp": mpmath.nstr(lower, 25),
                "upper_hp": mpmath.nstr(upper, 25),
                "margin_hp": mpmath.nstr(margin, 25),
                "dps": _MP_DPS}


def evaluate_distinctness_cell(pres: Presentation, p: float, p_prime: float,
                               t: float, k: int) -> Certificate:
    """Evaluate the witness f = chi_{S_k} with state phi_t at one (t, k) cell.
    All arithmetic is on the radial fast path."""
    f = GroupFunction.sphere_indicator(pres, k)
    phi = make_haagerup_function(pres, t)
    lower = state_lower_bound(f, phi, p)
    if p_prime == 2.0:
        upper = as_cstar_lp_upper(reduced_upper_haagerup(f), 2.0)
    else:
        upper = as_cstar_lp_upper(
            pf_star_upper_interp(f, p_prime, reduced_upper_haagerup(f)), p_prime)
    _check_certified(lower, upper)
    margin = lower.value - upper.value
    reval = _revalidate_distinctness(pres, p, p_prime, t, k)
    valid = _margin_ok(lower.value, upper.value) and reval["margin_sign_ok"]
    return Certificate("distinctness", pres.descriptor(), f"sphere:{k}", p, p_prime,
                       {"t": t, "p_star": lower.params["p_star"]},
                       lower, upper, margin, valid, reval)


def admissible_ts(pres: Presentation, p: float, t_grid) -> list[float]:
    """Grid values meeting the threshold discipline log(C)/t < p with a 1%
    slack band: t >= t_min = log(C) / (0.99 p)."""
    rate = growth.growth_rate(pres)
    t_min = 0.0 if rate == 1.0 else math.log(rate) / (T_SLACK * p)
    return [t for t in t_grid if t >= t_min]


def distinctness_witness(pres: Presentation, p: float, p_prime: float, t_grid,
                         k_range, workers: int = 1):
    """Search f = chi_{S_k} over k (ascending) and admissible t (descending)
    for a certified gap between the L^p lower bound and the L^{p'} upper
    bound; the first valid cell in that deterministic order wins.  Amenable
    families run the same search and report not-found."""
    p, p_prime = float(p), float(p_prime)
    if not 2.0 <= p_prime < p:
        raise DomainError(f"need 2 <= p' < p, got p'={p_prime}, p={p}")
    ts = sorted(admissible_ts(pres, p, t_grid), reverse=True)
    ks = [k for k in k_range if k >= 1]
    cells = [(k, t) for k in ks for t in ts]
    if not cells:
        raise DomainError("empty search space: no admissible (k, t) cells")

    def run(cell):
        k, t = cell
        return evaluate_distinctness_cell(pres, p, p_prime, t, k)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            certs = list(pool.map(run, cells))
    else:
        certs = [run(c) for c in cells]
    best = None
    for cert in certs:  # deterministic search order, not completion order
        if cert.valid:
            return cert
        if best is None or cert.margin > best.margin:
            best = cert
    return NotFoundReport(
        "distinctness", pres.descriptor(),
        "no (k, t) cell produced a certified positive margin",
        best_margin=best.margin if best else None,
        best_cell=({"k": int(best.witness.split(":")[1]),
                    "t": best.phi_params["t"]} if best else None),
        searched=len(cells))


# -- failure of amenability ------------------------------------------------


def _revalidate_hulanicki(pres: Presentation, p: float, n: int,
                          reduced_value: float) -> dict:
    with mpmath.workdps(_MP_DPS):
        l1 = mpmath.mpf(growth.ball_size(pres, n))
        expo = mpmath.mpf(2) / mpmath.mpf(p)
        upper = mpmath.mpf(reduced_value) ** expo * l1 ** (1 - expo)
        margin = l1 - upper
        return {"margin_sign_ok": bool(margin > 0),
                "lower_hp": mpmath.nstr(l1, 25),
                "upper_hp": mpmath.nstr(upper, 25),
                "margin_hp": mpmath.nstr(margin, 25),
                "dps": _MP_DPS}


def hulanicki_witness(pres: Presentation, p: float, ball_radii=(1, 2, 3),
                      workers: int = 1):
    """Witness that the trivial representation fails to extend: find a
    nonnegative f (the ball indicators, radius 1 first) whose interpolation
    upper bound at p falls strictly below <f, 1> = ||f||_1.  Amenable
    families (and p = inf, where the bound degenerates to ||f||_1) report
    not-found."""
    p = float(p)
    if not p > 2.0:
        raise DomainError(f"hulanicki witness needs p in (2, inf), got {p}")
    if p == math.inf:
        return NotFoundReport("hulanicki", pres.descriptor(),
                              "at p = inf the upper bound equals ||f||_1")
    best = None
    searched = 0
    for n in ball_radii:
        f = GroupFunction.ball_indicator(pres, n)
        l1 = lp_norm(f, 1.0)
        lower = NormEstimate(l1, CERTIFIED_LOWER, Target("cstar_lp", math.inf),
                             "trivial-representation-pairing", {"ball_radius": n})
        reduced = best_reduced_upper(f)
        upper = pf_star_upper_interp(f, p, reduced)
        _check_certified(lower, upper)
        margin = lower.value - upper.value
        searched += 1
        reval = _revalidate_hulanicki(pres, p, n, reduced.value)
        valid = _margin_ok(lower.value, upper.value) and reval["margin_sign_ok"]
        cert = Certificate("hulanicki", pres.descriptor(), f"ball:{n}", p, None,
                           None, lower, upper, margin, valid, reval)
        if cert.valid:
            return cert
        if best is None or cert.margin > best.margin:
            best = cert
    return NotFoundReport(
        "hulanicki", pres.descriptor(),
        "no ball indicator separated the trivial-representation value from "
        "the interpolation upper bound (expected for amenable families)",
        best_margin=best.margin if best else None,
        best_cell={"witness": best.witness} if best else None,
        searched=searched)


# -- bracket scans ---------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    p: float
    lower: float
    upper: float
    gap: float
    lower_method: str
    upper_method: str
    flags: tuple[str, ...] = ()

    def to_json(self):
        return {"p": self.p, "lower": self.lower, "upper": self.upper,
                "gap": self.gap, "lower_method": self.lower_method,
                "upper_method": self.upper_method, "flags": list(self.flags)}


@dataclass(frozen=True)
class ScanReport:
    group: str
    f: str
    rows: tuple[ScanRow, ...]
    params: dict = field(default_factory=dict)

    def to_json(self):
        return {"group": self.group, "f": self.f,
                "rows": [r.to_json() for r in self.rows], "params": dict(self.params)}


def scan_report(pres: Presentation, f: GroupFunction, p_grid,
                f_descriptor: str = "", radius: int = 8, iters: int = 60,
                seed: int | None = None, workers: int = 1) -> ScanReport:
    """Per-p certified bracket [lower(p), upper(p)] for ||f||_{C*_{L^p}} using
    every certified method available: lower = max(reduced-norm lower via the
    p=2 Rayleigh bound, state pairing at an admissible t); upper = the
    interpolation bound through the sharpest reduced upper.  Rows where the
    raw bracket crosses are flagged; a crossing beyond tolerance is a test
    failure upstream, never silently repaired."""
    from .opnorm import DEFAULT_SEED
    if seed is None:
        seed = DEFAULT_SEED
    grid = [float(p) for p in p_grid]
    if any(p < 2.0 for p in grid):
        raise DomainError("scan grid must lie within [2, inf]")
    rate = growth.growth_rate(pres)
    reduced_lower = lambda_p_lower(f, 2.0, radius=radius, iters=iters, seed=seed)
    reduced_up = best_reduced_upper(f)

    def row(p: float) -> ScanRow:
        lower_val, lower_method = reduced_lower.value, "reduced-rayleigh"
        t = (math.log(rate) / (T_SLACK * p)) if rate > 1.0 else 1.0
        state = state_lower_bound(f, make_haagerup_function(pres, t), p)
        if state.value > lower_val:
            lower_val, lower_method = state.value, "state-pairing"
        upper = pf_star_upper_interp(f, p, reduced_up)
        flags = []
        if lower_val > upper.value:
            flags.append("bracket_crossed")
        return ScanRow(p, lower_val, upper.value, upper.value - lower_val,
                       lower_method, f"{upper.method}({reduced_up.method})",
                       tuple(flags))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(row, grid))
    else:
        rows = tuple(row(p) for p in grid)
    return ScanReport(pres.descriptor(), f_descriptor, rows,
                      params={"radius": radius, "iters": iters, "seed": seed})
