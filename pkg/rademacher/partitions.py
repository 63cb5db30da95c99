"""r-color partition numbers from Poincare-series coefficients.

The weight-2 duality between eta^{-r} and P_{2 + r/2, -n + r/24} gives

    p_r(n) = -c_{r/24}(P_{2 + r/2, -n + r/24}),        1 <= r <= 24, n >= 1,

and for r = 1 the same series, rewritten with I_{3/2}(z) = sqrt(2z/pi) d/dz
(sinh(z)/z) and the Kloosterman symmetry, is the classical sinh-kernel formula

    p(n) = 1/(pi sqrt 2) sum_c A_c(n) sqrt(c) d/dn [sinh(mu sqrt(n - 1/24)/c) / sqrt(n - 1/24)]

with A_c(n) = e^{pi i/4} A(-1/24, n - 1/24; c).

Both pipelines size their working precision from the c = 1 term, sum with the
integer threshold of the context and escalate the context until the analytic
value rounds with a margin below ``ctx.rounding_margin``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

import mpmath

from .exact import bernoulli, p_r_exact_table
from .exceptions import CertificationError, DomainError, PrecisionError
from .kloosterman import RationalIndex24, kloosterman_sum
from .modular import GUARD_BITS, ComplexHP
from .poincare import (
    CoefficientResult,
    SeriesTerm,
    WeightIndexPair,
    coeff_positive_m,
    eisenstein_coeff,
    leading_term_magnitude,
    poincare_coefficient,
    sum_over_c,
    zeta_even,
)
from .precision import PrecisionContext, default_context
from .special import sinh_kernel

logger = logging.getLogger(__name__)

LEADING_GUARD_BITS = 32
# bits added per decade of the truncation point
BITS_PER_DECADE = 8
ZETA14_DIRECT_TERMS = 100

METHOD_POINCARE = "poincare"
METHOD_CLASSICAL = "classical"


@dataclass(frozen=True)
class PartitionRequest:
    """One p_r(n) query."""

    r: int
    n: int
    ctx: PrecisionContext = field(default_factory=default_context)

    def __post_init__(self) -> None:
        if not 1 <= self.r <= 24:
            raise DomainError(f"r must lie in [1, 24], got {self.r}")
        if self.n < 0:
            raise DomainError(f"n must be >= 0, got {self.n}")


@dataclass(frozen=True)
class CertifiedCount:
    """An analytic partition number and its rounding.

    Attributes
    ----------
    r, n : int
        The query.
    analytic : ComplexHP
        The series value before rounding.
    rounded : int
        Nearest integer to the real part.
    margin : float
        |Re(analytic) - rounded|.
    certified : bool | None
        Outcome of the comparison with the exact oracle, ``None`` if not run.
    c_max : int
        Truncation used (0 when no series was summed).
    bits : int
        Working precision of the accepted evaluation.
    tail_estimate : mpmath.mpf
        |S(c_max) - S(c_max/2)|.
    method : str
        ``"poincare"`` or ``"classical"``.
    terms : tuple of SeriesTerm or None
        Per-c table, when requested.
    """

    r: int
    n: int
    analytic: ComplexHP
    rounded: int
    margin: float
    certified: Optional[bool]
    c_max: int
    bits: int
    tail_estimate: mpmath.mpf
    method: str = METHOD_POINCARE
    terms: Optional[Tuple[SeriesTerm, ...]] = None

    def check(self) -> CertifiedCount:
        """Return ``self``; raise :class:`CertificationError` if the oracle disagreed."""
        if self.certified is False:
            raise CertificationError(self.r, self.n, self.rounded, p_r_exact_table(self.r, self.n)[self.n])
        return self


@dataclass(frozen=True)
class ResidualReport:
    """|classical - poincare| before rounding, at a shared truncation."""

    residual: mpmath.mpf
    c_max: int
    tail_estimate: mpmath.mpf
    value: ComplexHP


@dataclass(frozen=True)
class ZeroExpansion:
    """Magnitude of a coefficient that the duality forces to vanish."""

    magnitude: mpmath.mpf
    c_max: int
    tail_estimate: mpmath.mpf
    value: ComplexHP


@dataclass(frozen=True)
class Zeta14Identity:
    """B_14 and zeta(14) recovered from p_24(1) = 24, with independent checks."""

    p24_1: int
    p24_1_analytic: int
    b14: Fraction
    b14_recurrence: Fraction
    zeta14: mpmath.mpf
    zeta14_direct: mpmath.mpf
    eisenstein_check: Fraction

    @property
    def relative_error(self) -> mpmath.mpf:
        return abs(self.zeta14 - self.zeta14_direct) / self.zeta14_direct


def _duality_pair(r: int, n: int) -> Tuple[WeightIndexPair, RationalIndex24]:
    return WeightIndexPair(4 + r, RationalIndex24(r - 24 * n)), RationalIndex24(r)


def _required_bits(leading: mpmath.mpf, c_start: int) -> int:
    magnitude = int(mpmath.ceil(mpmath.log(leading, 2))) if leading > 1 else 0
    return magnitude + LEADING_GUARD_BITS + BITS_PER_DECADE * math.ceil(math.log10(max(c_start, 1)))


def _coarse(ctx: PrecisionContext) -> PrecisionContext:
    return replace(ctx, bits=53)


def _duality_series(
    r: int,
    n: int,
    ctx: PrecisionContext,
    *,
    c_max: Optional[int],
    tolerance: Optional[float],
    keep_terms: bool,
) -> Tuple[CoefficientResult, int]:
    """-c_{r/24}(P_{2 + r/2, -n + r/24}) and the precision it was summed at."""
    pair, index = _duality_pair(r, n)
    if pair.m.t == 0:
        work = ctx
    else:
        c_start = c_max if c_max is not None else ctx.initial_c_max(index.t + abs(pair.m.t))
        leading = leading_term_magnitude(pair, index, _coarse(ctx))
        work = ctx.with_bits(_required_bits(leading, c_start))
    result = poincare_coefficient(pair, index, work, c_max=c_max, tolerance=tolerance, keep_terms=keep_terms)
    with mpmath.workprec(work.bits + GUARD_BITS):
        negated = CoefficientResult(-result.value, result.c_max, result.tail_estimate, result.terms, result.exact)
    return negated, work.bits


def _classical_term(n: int, ctx: PrecisionContext) -> Callable[[int], ComplexHP]:
    m, index = RationalIndex24(-1), RationalIndex24(24 * n - 1)
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        scale = mpmath.expjpi(mpmath.mpf(1) / 4) / (mpmath.pi * mpmath.sqrt(2))

    def term(c: int) -> ComplexHP:
        A = kloosterman_sum(m, index, c, ctx).value
        return scale * A * mpmath.sqrt(c) * sinh_kernel(n, c, ctx)

    return term


def _classical_series(
    n: int,
    ctx: PrecisionContext,
    *,
    c_max: Optional[int],
    tolerance: Optional[float],
    keep_terms: bool,
) -> Tuple[CoefficientResult, int]:
    c_start = c_max if c_max is not None else ctx.initial_c_max(24 * n)
    with mpmath.workprec(53):
        leading = sinh_kernel(n, 1, _coarse(ctx)) / (mpmath.pi * mpmath.sqrt(2))
    work = ctx.with_bits(_required_bits(leading, c_start))
    result = sum_over_c(
        _classical_term(n, work),
        c_start,
        work,
        tolerance=tolerance,
        fixed=c_max is not None,
        keep_terms=keep_terms,
    )
    return result, work.bits


def _round(value: ComplexHP, bits: int) -> Tuple[int, float, bool]:
    with mpmath.workprec(bits + GUARD_BITS):
        re, im = mpmath.re(value), mpmath.im(value)
        rounded = int(mpmath.nint(re))
        margin = float(abs(re - rounded))
        real_enough = abs(im) < mpmath.mpf(10) ** -6 * abs(re) + mpmath.ldexp(1, -(bits // 2))
    return rounded, margin, bool(real_enough)


def _escalating(
    r: int,
    n: int,
    ctx: PrecisionContext,
    method: str,
    evaluate: Callable[[PrecisionContext], Tuple[CoefficientResult, int]],
    certify: bool,
) -> CertifiedCount:
    while True:
        try:
            result, bits = evaluate(ctx)
        except PrecisionError as exc:
            logger.debug("p_%d(%d) at %d bits: %s", r, n, ctx.bits, exc)
        else:
            rounded, margin, real_enough = _round(result.value, bits)
            if margin < ctx.rounding_margin and real_enough:
                break
            logger.debug("p_%d(%d) at %d bits: margin %.3g, imaginary part too large: %s", r, n, bits, margin, not real_enough)
        try:
            ctx = ctx.escalate()
        except PrecisionError:
            logger.warning("p_%d(%d): precision escalation exhausted", r, n)
            raise

    certified = None
    if certify:
        exact = p_r_exact_table(r, n)[n]
        certified = rounded == exact
        if not certified:
            logger.warning("p_%d(%d): analytic %d disagrees with exact %d", r, n, rounded, exact)
    return CertifiedCount(
        r=r,
        n=n,
        analytic=result.value,
        rounded=rounded,
        margin=margin,
        certified=certified,
        c_max=result.c_max,
        bits=bits,
        tail_estimate=result.tail_estimate,
        method=method,
        terms=result.terms,
    )


def _trivial_count(r: int, ctx: PrecisionContext, method: str, certify: bool) -> CertifiedCount:
    return CertifiedCount(
        r=r,
        n=0,
        analytic=mpmath.mpc(1),
        rounded=1,
        margin=0.0,
        certified=True if certify else None,
        c_max=0,
        bits=ctx.bits,
        tail_estimate=mpmath.mpf(0),
        method=method,
    )


def p_r_analytic(
    req: PartitionRequest,
    *,
    certify: bool = False,
    c_max: Optional[int] = None,
    keep_terms: bool = False,
) -> CertifiedCount:
    """p_r(n) as minus the coefficient at r/24 of P_{2 + r/2, -n + r/24}.

    n = 0 returns 1 without summing.  The m = 0 case (r = 24, n = 1) is the
    exact Eisenstein coefficient.

    Raises
    ------
    PrecisionError
        If the rounding margin stays at or above ``rounding_margin`` after the
        last escalation.
    """
    r, n = req.r, req.n
    if n == 0:
        return _trivial_count(r, req.ctx, METHOD_POINCARE, certify)

    def evaluate(ctx: PrecisionContext) -> Tuple[CoefficientResult, int]:
        return _duality_series(r, n, ctx, c_max=c_max, tolerance=ctx.integer_tolerance, keep_terms=keep_terms)

    return _escalating(r, n, req.ctx, METHOD_POINCARE, evaluate, certify)


def p1_classical(
    n: int,
    ctx: PrecisionContext,
    *,
    certify: bool = False,
    c_max: Optional[int] = None,
    keep_terms: bool = False,
) -> CertifiedCount:
    """p(n) from the sinh-kernel series with the phase-shifted Kloosterman sums."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if n == 0:
        return _trivial_count(1, ctx, METHOD_CLASSICAL, certify)

    def evaluate(work: PrecisionContext) -> Tuple[CoefficientResult, int]:
        return _classical_series(n, work, c_max=c_max, tolerance=work.integer_tolerance, keep_terms=keep_terms)

    return _escalating(1, n, ctx, METHOD_CLASSICAL, evaluate, certify)


def consistency_classical_vs_poincare(n: int, ctx: PrecisionContext) -> ResidualReport:
    """Both r = 1 pipelines at the same fixed truncation; they agree term by term."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    c_max = ctx.initial_c_max(24 * n)
    classical, classical_bits = _classical_series(n, ctx, c_max=c_max, tolerance=None, keep_terms=False)
    duality, duality_bits = _duality_series(1, n, ctx, c_max=c_max, tolerance=None, keep_terms=False)
    with mpmath.workprec(max(classical_bits, duality_bits) + GUARD_BITS):
        residual = abs(classical.value - duality.value)
    logger.debug("p(%d): pipelines differ by %s at c = %d", n, mpmath.nstr(residual, 5), c_max)
    return ResidualReport(
        residual=residual,
        c_max=c_max,
        tail_estimate=max(classical.tail_estimate, duality.tail_estimate),
        value=duality.value,
    )


def zeta14_from_identity(ctx: Optional[PrecisionContext] = None) -> Zeta14Identity:
    """B_14 and zeta(14) from p_24(1) = 24.

    The duality gives p_24(1) = -c_1(E_14) = (2 * 14 / B_14) sigma_13(1), so
    B_14 = 28 / p_24(1); zeta(14) then follows from the Eisenstein normalisation.
    The analytic p_24(1) is certified against the oracle before B_14 is formed.
    """
    ctx = ctx or default_context()
    p24_1 = p_r_exact_table(24, 1)[1]
    analytic = p_r_analytic(PartitionRequest(24, 1, ctx), certify=True).check()
    b14 = Fraction(2 * 14, p24_1)
    zeta14 = zeta_even(14, ctx, bernoulli_value=b14)
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        direct = mpmath.fsum(mpmath.mpf(j) ** -14 for j in range(1, ZETA14_DIRECT_TERMS + 1))
    return Zeta14Identity(
        p24_1=p24_1,
        p24_1_analytic=analytic.rounded,
        b14=b14,
        b14_recurrence=bernoulli(14),
        zeta14=zeta14,
        zeta14_direct=direct,
        eisenstein_check=-eisenstein_coeff(14, 1),
    )


def expansion_of_zero(r: int, n: int, ctx: PrecisionContext, c_max: Optional[int] = None) -> ZeroExpansion:
    """|coefficient at r/24 of the cusp form P_{2 + r/2, n + r/24}|.

    The duality with eta^{-r} forces it to vanish whenever the cusp space is
    trivial (r = 12, 24).  Summed without doubling at the default cutoff.
    """
    if not 1 <= r <= 24:
        raise DomainError(f"r must lie in [1, 24], got {r}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    pair, index = WeightIndexPair(4 + r, RationalIndex24(24 * n + r)), RationalIndex24(r)
    cutoff = c_max if c_max is not None else ctx.initial_c_max(index.t + pair.m.t)
    result = coeff_positive_m(pair, index, ctx, c_max=cutoff)
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        magnitude = abs(result.value)
    return ZeroExpansion(magnitude=magnitude, c_max=result.c_max, tail_estimate=result.tail_estimate, value=result.value)


def coefficient_from_partition(r: int, n: int) -> int:
    """The exact coefficient c_{r/24}(P_{2 + r/2, -n + r/24}) = -p_r(n)."""
    if not 1 <= r <= 24:
        raise DomainError(f"r must lie in [1, 24], got {r}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return -p_r_exact_table(r, n)[n]


def certify_range(r: int, n_max: int, ctx: PrecisionContext) -> List[CertifiedCount]:
    """p_r_analytic with certification for n = 1, ..., n_max."""
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    counts = [p_r_analytic(PartitionRequest(r, n, ctx), certify=True) for n in range(1, n_max + 1)]
    failures = sum(1 for count in counts if not count.certified)
    logger.debug("p_%d(1..%d): %d certified, %d failed", r, n_max, len(counts) - failures, failures)
    return counts
