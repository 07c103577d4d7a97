"""Exception types shared across the package."""

from __future__ import annotations


class ExoticError(Exception):
    """Base class for errors raised by this package."""


class MalformedInputError(ExoticError, ValueError):
    """A descriptor, word, or letter could not be parsed or lies outside the alphabet."""


class DomainError(ExoticError, ValueError):
    """Inputs are well formed but violate an operation's domain (mismatched
    presentations, exponents out of range, wrong estimate target, ...)."""


class ResourceLimitError(ExoticError, RuntimeError):
    """A size cap would be exceeded.  ``flag`` names the knob that raises the cap."""

    def __init__(self, message: str, *, flag: str, estimate: int | None = None,
                 limit: int | None = None):
        super().__init__(message)
        self.flag = flag
        self.estimate = estimate
        self.limit = limit


class MembershipError(ExoticError, ValueError):
    """A positive definite function is not certified to lie in the requested
    ell^p space.  Carries the membership threshold ``p_star``; when the request
    sits exactly on the threshold the function belongs to every ell^{p+eps},
    which is surfaced through ``member_of_intersection`` instead of being
    silently accepted."""

    def __init__(self, message: str, *, p_star: float,
                 member_of_intersection: bool = False):
        super().__init__(message)
        self.p_star = p_star
        self.member_of_intersection = member_of_intersection
