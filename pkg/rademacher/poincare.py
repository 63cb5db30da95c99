"""Fourier coefficients of the Poincare series P_{k,m}.

For a weight k >= 5/2 (stored as ``two_k``) and an index m in (1/24)Z with
k - 12m in 2Z, the coefficient of q^n is

    m > 0:  delta_{m,n} + 2 pi i^{-k} (n/m)^{(k-1)/2}   sum_c A(m,n;c)/c J_{k-1}(4 pi sqrt(mn)/c)
    m < 0:                2 pi i^{-k} (n/|m|)^{(k-1)/2} sum_c A(m,n;c)/c I_{k-1}(4 pi sqrt(|m|n)/c)
    m = 0:  -(2k/B_k) sigma_{k-1}(n)        (the Eisenstein series E_k)

with i^{-k} = e^{-i pi k/2}.  The sums over c are truncated adaptively: the
partial sum S(C) is accepted once |S(C) - S(C/2)| falls below the requested
threshold, otherwise C doubles (earlier terms are kept) up to the context cap.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, List, Optional, Tuple

import mpmath

from .exact import bernoulli, sigma
from .exceptions import DomainError, PrecisionError
from .kloosterman import RationalIndex24, kloosterman_sum
from .modular import GUARD_BITS, ComplexHP
from .precision import PrecisionContext
from .special import HalfIntOrder, bessel_I, bessel_J

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightIndexPair:
    """Weight k = two_k/2 and index m of a Poincare series."""

    two_k: int
    m: RationalIndex24

    def __post_init__(self) -> None:
        if self.two_k < 5:
            raise DomainError(f"weight {self.two_k}/2 is below 5/2")
        # k - 12m = (two_k - 24m)/2 must be even
        if (self.two_k - self.m.t) % 4:
            raise DomainError(f"k - 12m is not an even integer for k = {self.two_k}/2, m = {self.m}")

    @property
    def k(self) -> Fraction:
        return Fraction(self.two_k, 2)

    @property
    def bessel_order(self) -> HalfIntOrder:
        return HalfIntOrder(self.two_k - 2)


@dataclass(frozen=True)
class SeriesTerm:
    """One row of the per-c diagnostics table."""

    c: int
    term: ComplexHP
    partial: ComplexHP


@dataclass(frozen=True)
class CoefficientResult:
    """A truncated coefficient and how it was truncated.

    Attributes
    ----------
    value : ComplexHP
        The coefficient, including the Kronecker delta for m > 0.
    c_max : int
        Last c included (0 when the value is exact).
    tail_estimate : mpmath.mpf
        |S(c_max) - S(c_max/2)|.
    terms : tuple of SeriesTerm or None
        Per-c contributions, when requested.
    exact : Fraction or None
        The exact value, for the Eisenstein case.
    """

    value: ComplexHP
    c_max: int
    tail_estimate: mpmath.mpf
    terms: Optional[Tuple[SeriesTerm, ...]] = None
    exact: Optional[Fraction] = None


def sum_over_c(
    term: Callable[[int], ComplexHP],
    c_start: int,
    ctx: PrecisionContext,
    *,
    tolerance: Optional[float] = None,
    fixed: bool = False,
    keep_terms: bool = False,
) -> CoefficientResult:
    """Sum ``term(c)`` for c = 1, 2, ... with the doubling check.

    With ``fixed`` the sum stops at ``c_start`` whatever the tail looks like.
    """
    threshold = ctx.effective_tolerance if tolerance is None else tolerance
    rows: List[Tuple[int, ComplexHP]] = []
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        total = mpmath.mpc(0)
        done = 0

        def extend(upto: int) -> ComplexHP:
            nonlocal total, done
            block = []
            for c in range(done + 1, upto + 1):
                value = term(c)
                block.append(value)
                if keep_terms:
                    rows.append((c, value))
            block_sum = mpmath.fsum(block) if block else mpmath.mpc(0)
            total += block_sum
            done = upto
            return block_sum

        if c_start < 1:
            raise DomainError(f"truncation must be at least 1, got {c_start}")
        c_max = c_start if fixed else max(2, c_start)
        extend(c_max // 2)
        tail = abs(extend(c_max))
        while not fixed and tail >= threshold:
            if 2 * c_max > ctx.c_max_cap:
                raise PrecisionError(f"sum over c not converged at c = {c_max} (tail {mpmath.nstr(tail, 5)})")
            c_max *= 2
            tail = abs(extend(c_max))
            logger.debug("doubled truncation to c = %d, tail %s", c_max, mpmath.nstr(tail, 5))

        terms = None
        if keep_terms:
            partial = mpmath.mpc(0)
            table = []
            for c, value in rows:
                partial += value
                table.append(SeriesTerm(c, value, partial))
            terms = tuple(table)
    return CoefficientResult(value=total, c_max=c_max, tail_estimate=tail, terms=terms)


def _check_index(pair: WeightIndexPair, n: RationalIndex24) -> None:
    if n.t <= 0:
        raise DomainError(f"coefficient index must be positive, got {n}")
    if (n.t - pair.m.t) % 24:
        raise DomainError(f"index {n} is not in Z + {pair.m}")


def _prefactor(pair: WeightIndexPair, n: RationalIndex24) -> ComplexHP:
    # 2 pi i^{-k} (n/|m|)^{(k-1)/2}
    ratio = mpmath.mpf(n.t) / abs(pair.m.t)
    return 2 * mpmath.pi * mpmath.expjpi(mpmath.mpf(-pair.two_k) / 4) * mpmath.power(
        ratio, mpmath.mpf(pair.two_k - 2) / 4
    )


def _bessel_argument(pair: WeightIndexPair, n: RationalIndex24) -> mpmath.mpf:
    # 4 pi sqrt(|m| n), with |m| n = |t_m| t_n / 576
    return 4 * mpmath.pi * mpmath.sqrt(mpmath.mpf(abs(pair.m.t) * n.t)) / 24


def _truncation(pair: WeightIndexPair, n: RationalIndex24, ctx: PrecisionContext, c_max: Optional[int]) -> Tuple[int, bool]:
    if c_max is not None:
        if c_max < 1:
            raise DomainError(f"c_max must be positive, got {c_max}")
        return c_max, True
    return ctx.initial_c_max(n.t + abs(pair.m.t)), False


def leading_term_magnitude(pair: WeightIndexPair, n: RationalIndex24, ctx: PrecisionContext) -> mpmath.mpf:
    """|c = 1 term| of the Kloosterman-Bessel series; A(m, n; 1) has modulus one."""
    if pair.m.t == 0:
        raise DomainError("the Eisenstein case has no Kloosterman-Bessel series")
    _check_index(pair, n)
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        scale = abs(_prefactor(pair, n))
        argument = _bessel_argument(pair, n)
        if pair.m.t < 0:
            return scale * bessel_I(pair.bessel_order, argument, ctx)
        return scale * abs(bessel_J(pair.bessel_order, argument, ctx))


def coeff_negative_m(
    pair: WeightIndexPair,
    n: RationalIndex24,
    ctx: PrecisionContext,
    *,
    c_max: Optional[int] = None,
    tolerance: Optional[float] = None,
    keep_terms: bool = False,
) -> CoefficientResult:
    """Coefficient of q^n in P_{k,m} for m < 0 (Kloosterman-I series)."""
    if pair.m.t >= 0:
        raise DomainError(f"index m = {pair.m} is not negative")
    _check_index(pair, n)
    order = pair.bessel_order
    c_start, fixed = _truncation(pair, n, ctx, c_max)
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        prefactor = _prefactor(pair, n)
        argument = _bessel_argument(pair, n)

    def term(c: int) -> ComplexHP:
        A = kloosterman_sum(pair.m, n, c, ctx).value
        return prefactor * A / c * bessel_I(order, argument / c, ctx)

    return sum_over_c(term, c_start, ctx, tolerance=tolerance, fixed=fixed, keep_terms=keep_terms)


def coeff_positive_m(
    pair: WeightIndexPair,
    n: RationalIndex24,
    ctx: PrecisionContext,
    *,
    c_max: Optional[int] = None,
    tolerance: Optional[float] = None,
    keep_terms: bool = False,
) -> CoefficientResult:
    """Coefficient of q^n in P_{k,m} for m > 0 (cusp form; Kloosterman-J series plus delta)."""
    if pair.m.t <= 0:
        raise DomainError(f"index m = {pair.m} is not positive")
    _check_index(pair, n)
    order = pair.bessel_order
    c_start, fixed = _truncation(pair, n, ctx, c_max)
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        prefactor = _prefactor(pair, n)
        argument = _bessel_argument(pair, n)

    def term(c: int) -> ComplexHP:
        A = kloosterman_sum(pair.m, n, c, ctx).value
        return prefactor * A / c * bessel_J(order, argument / c, ctx)

    result = sum_over_c(term, c_start, ctx, tolerance=tolerance, fixed=fixed, keep_terms=keep_terms)
    if pair.m.t != n.t:
        return result
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        value = result.value + 1
    return CoefficientResult(value, result.c_max, result.tail_estimate, result.terms)


def eisenstein_coeff(k: int, n: int) -> Fraction:
    """-(2k / B_k) sigma_{k-1}(n), the n-th coefficient of E_k."""
    if k < 4 or k % 2:
        raise DomainError(f"Eisenstein weight must be even and >= 4, got {k}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return -Fraction(2 * k) / bernoulli(k) * sigma(k - 1, n)


def eisenstein_coeff_series(k: int, n: int, ctx: PrecisionContext, c_max: int = 1000) -> CoefficientResult:
    """(-1)^{k/2} (2 pi)^k n^{k-1} / (k-1)! * sum_{c <= c_max} A(0, n; c) / c^k."""
    if k < 4 or k % 2:
        raise DomainError(f"Eisenstein weight must be even and >= 4, got {k}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    zero, index = RationalIndex24(0), RationalIndex24(24 * n)
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        prefactor = (-1) ** (k // 2) * (2 * mpmath.pi) ** k * mpmath.mpf(n) ** (k - 1) / factorial(k - 1)

    def term(c: int) -> ComplexHP:
        return prefactor * kloosterman_sum(zero, index, c, ctx).value / mpmath.mpf(c) ** k

    return sum_over_c(term, c_max, ctx, fixed=True)


def zeta_even(k: int, ctx: PrecisionContext, bernoulli_value: Optional[Fraction] = None) -> mpmath.mpf:
    """zeta(k) = (-1)^{k/2+1} (2 pi)^k B_k / (2 k!) for even k >= 2."""
    if k < 2 or k % 2:
        raise DomainError(f"zeta_even needs an even k >= 2, got {k}")
    B = bernoulli(k) if bernoulli_value is None else Fraction(bernoulli_value)
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        value = (2 * mpmath.pi) ** k * mpmath.mpf(B.numerator) / (B.denominator * 2 * factorial(k))
        return value if (k // 2) % 2 else -value


def poincare_coefficient(
    pair: WeightIndexPair,
    n: RationalIndex24,
    ctx: PrecisionContext,
    *,
    c_max: Optional[int] = None,
    tolerance: Optional[float] = None,
    keep_terms: bool = False,
) -> CoefficientResult:
    """Dispatch on the sign of m; m = 0 returns the exact Eisenstein coefficient."""
    if pair.m.t > 0:
        return coeff_positive_m(pair, n, ctx, c_max=c_max, tolerance=tolerance, keep_terms=keep_terms)
    if pair.m.t < 0:
        return coeff_negative_m(pair, n, ctx, c_max=c_max, tolerance=tolerance, keep_terms=keep_terms)
    _check_index(pair, n)
    exact = eisenstein_coeff(pair.two_k // 2, n.t // 24)
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        value = mpmath.mpc(mpmath.mpf(exact.numerator) / exact.denominator)
    return CoefficientResult(value=value, c_max=0, tail_estimate=mpmath.mpf(0), exact=exact)
