"""Certified upper and lower bounds on group-algebra norms (ell^p, weighted
ell^p, reduced, symmetrized p-pseudofunction, and L^p-C*-norms) for functions
on finitely generated free groups and free products of cyclic groups, with
machine-checkable certificates witnessing norm separation at desk scale."""

__version__ = "0.1.0"

from .algebra import (GroupFunction, PolynomialWeight, convolve, involution,
                      lp_norm, pair, parse_function, weighted_norm)
from .certify import (Certificate, NotFoundReport, ScanReport,
                      distinctness_witness, evaluate_distinctness_cell,
                      hulanicki_witness, scan_report)
from .errors import (DomainError, ExoticError, MalformedInputError,
                     MembershipError, ResourceLimitError)
from .growth import (ball_size, growth_rate, lp_membership_threshold,
                     phi_lp_norm, sphere, sphere_size, spheres_up_to)
from .opnorm import (NormEstimate, OkayasuSequence, Target, best_reduced_upper,
                     conjugate, lambda_p_lower, okayasu_upper_seq,
                     pf_star_lower, pf_star_upper_interp, rd_membership,
                     reduced_upper_haagerup, reduced_upper_l1,
                     reduced_upper_radial, weighted_rd_upper)
from .posdef import (GramReport, PosDefFunction, gram_psd_check,
                     make_haagerup_function, state_lower_bound)
from .words import GroupElement, Presentation, identity, inverse, length, multiply

__all__ = [
    "__version__",
    "Presentation", "GroupElement", "identity", "multiply", "inverse", "length",
    "sphere", "spheres_up_to", "sphere_size", "ball_size", "growth_rate",
    "lp_membership_threshold", "phi_lp_norm",
    "GroupFunction", "PolynomialWeight", "convolve", "involution", "lp_norm",
    "weighted_norm", "pair", "parse_function",
    "PosDefFunction", "GramReport", "make_haagerup_function", "gram_psd_check",
    "state_lower_bound",
    "NormEstimate", "OkayasuSequence", "Target", "conjugate", "lambda_p_lower",
    "pf_star_lower", "reduced_upper_haagerup", "reduced_upper_l1",
    "reduced_upper_radial", "best_reduced_upper", "pf_star_upper_interp",
    "okayasu_upper_seq", "weighted_rd_upper", "rd_membership",
    "Certificate", "NotFoundReport", "ScanReport", "distinctness_witness",
    "evaluate_distinctness_cell", "hulanicki_witness", "scan_report",
    "ExoticError", "MalformedInputError", "DomainError", "ResourceLimitError",
    "MembershipError",
]
