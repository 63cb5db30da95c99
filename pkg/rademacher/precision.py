"""Numerical policy shared by every analytic computation.

A :class:`PrecisionContext` is an immutable value built once (usually from
:mod:`rademacher.config` and the command-line flags) and passed explicitly to
each operation.  Nothing in the package reads precision from global state;
operations enter ``mpmath.workprec(ctx.bits + guard)`` themselves.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Optional

from .exceptions import DomainError, PrecisionError

logger = logging.getLogger(__name__)

MAX_ESCALATIONS = 6


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision, truncation policy and tolerances.

    Attributes
    ----------
    bits : int
        Working mantissa precision, at least 53.
    c_max_initial : int
        Floor of the initial truncation of every sum over ``c``.
    c_max_scale : int
        Multiplier of ``sqrt(24n + 24|m|)`` in the initial truncation.
    c_max_cap : int
        Hard limit for the doubling check.
    tolerance : float | None
        Doubling-check threshold for raw coefficients; ``None`` means
        ``2**(-bits/2)``.
    integer_tolerance : float
        Doubling-check threshold for results that are rounded to integers.
    rounding_margin : float
        Largest accepted distance between an analytic value and its integer.
    sample_point : complex
        Point of the upper half-plane used to snap eta multipliers.
    escalations : int
        How many times this context has been escalated.
    """

    bits: int = 128
    c_max_initial: int = 32
    c_max_scale: int = 8
    c_max_cap: int = 10**6
    tolerance: Optional[float] = None
    integer_tolerance: float = 2.0**-8
    rounding_margin: float = 0.25
    sample_point: complex = complex(0.1, 0.7)
    escalations: int = 0

    def __post_init__(self) -> None:
        if self.bits < 53:
            raise DomainError(f"bits must be >= 53, got {self.bits}")
        if not 0 < self.rounding_margin <= 0.5:
            raise DomainError(f"rounding_margin must lie in (0, 1/2], got {self.rounding_margin}")
        if self.tolerance is not None and self.tolerance <= 0:
            raise DomainError("tolerance must be positive")
        if self.integer_tolerance <= 0:
            raise DomainError("integer_tolerance must be positive")
        if self.sample_point.imag <= 0:
            raise DomainError("sample_point must lie in the upper half-plane")
        if self.c_max_initial < 1 or self.c_max_scale < 1 or self.c_max_cap < self.c_max_initial:
            raise DomainError("inconsistent truncation policy")

    @property
    def effective_tolerance(self) -> float:
        """Doubling threshold for raw coefficients."""
        if self.tolerance is not None:
            return self.tolerance
        return 2.0 ** (-self.bits / 2)

    def initial_c_max(self, index_sum24: int) -> int:
        """Initial truncation for a sum whose indices satisfy 24n + 24|m| = index_sum24."""
        return min(
            self.c_max_cap,
            max(self.c_max_initial, math.ceil(self.c_max_scale * math.sqrt(max(index_sum24, 0)))),
        )

    def with_bits(self, bits: int) -> PrecisionContext:
        """Return a copy working at ``bits`` (never below the current precision)."""
        return replace(self, bits=max(self.bits, int(bits)))

    def escalate(self) -> PrecisionContext:
        """Double the precision and the truncation policy.

        Raises
        ------
        PrecisionError
            If the context has already been escalated ``MAX_ESCALATIONS`` times.
        """
        if self.escalations >= MAX_ESCALATIONS:
            raise PrecisionError(f"gave up after {MAX_ESCALATIONS} escalations at {self.bits} bits")
        logger.debug("escalating precision: %d -> %d bits", self.bits, 2 * self.bits)
        return replace(
            self,
            bits=2 * self.bits,
            c_max_initial=min(2 * self.c_max_initial, self.c_max_cap),
            c_max_scale=2 * self.c_max_scale,
            escalations=self.escalations + 1,
        )


def default_context() -> PrecisionContext:
    """128 bits, cap 10**6, rounding margin 1/4, sample point 0.1 + 0.7i."""
    return PrecisionContext()
