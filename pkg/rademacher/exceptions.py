"""Exception hierarchy for the rademacher package.

Library code raises these; only the command-line layer turns them into exit
codes (see :mod:`rademacher.main`).
"""

from __future__ import annotations


class RademacherError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RademacherError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class PrecisionError(RademacherError, ArithmeticError):
    """A numerical result could not be certified at the available precision.

    Raised when a multiplier snap residual is too large, when the truncation
    doubling check does not converge below the cap, or when a rounding margin
    stays too wide after the last allowed escalation.
    """


class CertificationError(RademacherError):
    """An analytic integer disagrees with the exact oracle."""

    def __init__(self, r: int, n: int, analytic: int, exact: int) -> None:
        super().__init__(f"p_{r}({n}): analytic {analytic} != exact {exact}")
        self.r = r
        self.n = n
        self.analytic = analytic
        self.exact = exact
