"""The modular group, the Dedekind eta function and its multiplier.

Matrices are exact integer objects.  The eta multiplier v_eta(M) is obtained
from the defining relation

    eta(M tau) = v_eta(M) * sqrt(c tau + d) * eta(tau)

evaluated at a fixed sample point and snapped to the nearest 24th root of
unity.  To keep the evaluation cheap for large ``c`` the image ``M tau`` is
first moved into the fundamental domain by an exact word in the generators
S = [1 1; 0 1] and T = [0 -1; 1 0], whose multipliers e^{pi i/12} and
e^{-pi i/4} are known; the exponents of those steps are tracked exactly and
only the square roots they contribute are numeric.

Square roots follow the branch -pi <= arg z < pi throughout.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Optional

import mpmath

from .exceptions import DomainError, PrecisionError
from .precision import PrecisionContext

logger = logging.getLogger(__name__)

ComplexHP = mpmath.mpc

GUARD_BITS = 16
MULTIPLIER_MIN_BITS = 96
SNAP_RESIDUAL = 0.02
# below this height eta_eval walks to the fundamental domain first
REDUCE_BELOW = 0.5


@dataclass(frozen=True)
class ModularMatrix:
    """An element [a b; c d] of SL_2(Z)."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(f"det [{self.a} {self.b}; {self.c} {self.d}] != 1")

    def __matmul__(self, other: ModularMatrix) -> ModularMatrix:
        return ModularMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> ModularMatrix:
        return ModularMatrix(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, k: int) -> ModularMatrix:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = IDENTITY, self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def inverse(self) -> ModularMatrix:
        return ModularMatrix(self.d, -self.b, -self.c, self.a)

    def act(self, tau, bits: Optional[int] = None) -> ComplexHP:
        """Moebius action on the upper half-plane, at ``bits`` when given.

        Without ``bits`` the image is rounded to the current mpmath precision.
        """
        if bits is None:
            tau = mpmath.mpc(tau)
            return (self.a * tau + self.b) / (self.c * tau + self.d)
        with mpmath.workprec(bits):
            return self.act(tau)


IDENTITY = ModularMatrix(1, 0, 0, 1)
S = ModularMatrix(1, 1, 0, 1)
T = ModularMatrix(0, -1, 1, 0)


@dataclass(frozen=True)
class UnityRoot24:
    """The root of unity exp(2 pi i e / 24), stored by its exponent mod 24."""

    e: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "e", self.e % 24)

    def __mul__(self, other: UnityRoot24) -> UnityRoot24:
        return UnityRoot24(self.e + other.e)

    def __pow__(self, k: int) -> UnityRoot24:
        return UnityRoot24(self.e * k)

    def inverse(self) -> UnityRoot24:
        return UnityRoot24(-self.e)

    def value(self) -> ComplexHP:
        return mpmath.expjpi(mpmath.mpf(self.e) / 12)


V_S = UnityRoot24(1)
V_T = UnityRoot24(21)


def principal_sqrt(z) -> ComplexHP:
    """Square root with -pi <= arg z < pi, so sqrt(-1) = -i."""
    z = mpmath.mpc(z)
    if z == 0:
        raise DomainError("square root of zero has no argument")
    if z.imag == 0 and z.real < 0:
        return mpmath.mpc(0, -mpmath.sqrt(-z.real))
    return mpmath.sqrt(z)


def _check_upper(tau) -> ComplexHP:
    tau = mpmath.mpc(tau)
    if tau.imag <= 0:
        raise DomainError(f"tau must lie in the upper half-plane, got {tau}")
    return tau


def _product_terms(tau: ComplexHP, bits: int) -> int:
    return int((bits + 8) * 0.6931471805599453 / (6.283185307179586 * float(tau.imag))) + 2


def eta_product(tau, ctx: PrecisionContext) -> ComplexHP:
    """q^{1/24} prod_{n >= 1} (1 - q^n), truncated once |q|^n < 2^{-bits-8}."""
    tau = _check_upper(tau)
    terms = _product_terms(tau, ctx.bits)
    with mpmath.workprec(ctx.bits + GUARD_BITS + terms.bit_length()):
        tau = mpmath.mpc(tau)
        q = mpmath.exp(2j * mpmath.pi * tau)
        threshold = mpmath.ldexp(1, -ctx.bits - 8)
        product = mpmath.mpc(1)
        qn = q
        while abs(qn) > threshold:
            product *= 1 - qn
            qn *= q
        return mpmath.exp(1j * mpmath.pi * tau / 12) * product


def eta_series(tau, ctx: PrecisionContext) -> ComplexHP:
    """q^{1/24} sum_n (-1)^n q^{n(3n-1)/2} (pentagonal number theorem)."""
    tau = _check_upper(tau)
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        tau = mpmath.mpc(tau)
        q = mpmath.exp(2j * mpmath.pi * tau)
        threshold = mpmath.ldexp(1, -ctx.bits - 8)
        total = mpmath.mpc(1)
        j = 1
        while True:
            lead = q ** (j * (3 * j - 1) // 2)
            if abs(lead) < threshold:
                break
            sign = -1 if j % 2 else 1
            total += sign * (lead + q ** (j * (3 * j + 1) // 2))
            j += 1
        return mpmath.exp(1j * mpmath.pi * tau / 12) * total


def _eta_checked(tau: ComplexHP, ctx: PrecisionContext) -> ComplexHP:
    by_product = eta_product(tau, ctx)
    by_series = eta_series(tau, ctx)
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        if abs(by_product - by_series) > mpmath.ldexp(abs(by_product), 4 - ctx.bits):
            raise PrecisionError(f"eta product and pentagonal series disagree at {tau}")
    return by_series


@dataclass(frozen=True)
class Reduction:
    """Outcome of moving M tau into the fundamental domain.

    Attributes
    ----------
    word : ModularMatrix
        G with G(M tau) = point.
    exponent : int
        Sum (mod 24) of the multiplier exponents of the generator steps.
    sqrt_factor : ComplexHP
        Product of the square roots sqrt(z) picked up at every T step.
    point : ComplexHP
        The reduced point, |Re| <= 1/2 and |point| >= 1.
    """

    word: ModularMatrix
    exponent: int
    sqrt_factor: ComplexHP
    point: ComplexHP


def reduce_to_fundamental_domain(M: ModularMatrix, tau, ctx: PrecisionContext) -> Reduction:
    """Walk M tau to the fundamental domain, so that eta(M tau) = eta(point) e^{-2 pi i exponent/24} / sqrt_factor.

    Each step's point is recomputed from the exact matrix product applied to
    ``tau``, so rounding errors do not accumulate along the word.
    """
    tau = _check_upper(tau)
    size = max(abs(M.c), abs(M.d), 1) + int(1 / float(tau.imag)) + 1
    limit = 64 + 8 * size.bit_length()
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        tau = mpmath.mpc(tau)
        word = IDENTITY
        exponent = 0
        factor = mpmath.mpc(1)
        z = M.act(tau)
        for _ in range(limit):
            k = int(mpmath.nint(z.real))
            if k:
                word = ModularMatrix(1, -k, 0, 1) @ word
                exponent -= k
                z = (word @ M).act(tau)
            if abs(z) < 1:
                factor *= principal_sqrt(z)
                word = T @ word
                exponent += V_T.e
                z = (word @ M).act(tau)
                continue
            return Reduction(word, exponent % 24, factor, z)
    raise PrecisionError(f"reduction of {M} did not terminate in {limit} steps")


def eta_eval(tau, ctx: PrecisionContext) -> ComplexHP:
    """Dedekind eta at ``tau``; product and pentagonal series must agree.

    Points below height 1/2 are first reduced to the fundamental domain.
    """
    tau = _check_upper(tau)
    if tau.imag >= REDUCE_BELOW:
        return _eta_checked(tau, ctx)
    reduction = reduce_to_fundamental_domain(IDENTITY, tau, ctx)
    eta_reduced = _eta_checked(reduction.point, ctx)
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        return eta_reduced * mpmath.expjpi(mpmath.mpf(-reduction.exponent) / 12) / reduction.sqrt_factor


@lru_cache(maxsize=16)
def _eta_at_sample(x: float, y: float, bits: int) -> ComplexHP:
    return eta_eval(mpmath.mpc(x, y), PrecisionContext(bits=bits, sample_point=complex(x, y)))


def complete_bottom_row(c: int, d: int) -> ModularMatrix:
    """Complete (c, d) to [a b; c d] with a = d^{-1} mod c taken in [0, c)."""
    if c <= 0:
        raise DomainError(f"c must be positive, got {c}")
    if gcd(c, d) != 1:
        raise DomainError(f"gcd({c}, {d}) != 1")
    a = 0 if c == 1 else pow(d, -1, c)
    return ModularMatrix(a, (a * d - 1) // c, c, d)


def eta_multiplier(M: ModularMatrix, ctx: PrecisionContext) -> UnityRoot24:
    """The 24th root of unity v_eta(M).

    For c = 0 the value follows from v(S^b) = e^{pi i b/12} and v(-I) = i.
    Otherwise the ratio eta(M tau0) / (sqrt(c tau0 + d) eta(tau0)) is snapped
    at the context's sample point; the snap must land within 0.02 rad.
    """
    if M.c == 0:
        # M = S^b, or M = -S^{-b} whose square-root factor is sqrt(-1) = -i
        return UnityRoot24(M.b if M.a == 1 else 6 - M.b)
    bits = max(MULTIPLIER_MIN_BITS, ctx.bits)
    work = ctx.with_bits(bits)
    tau0 = ctx.sample_point
    reduction = reduce_to_fundamental_domain(M, tau0, work)
    eta_reduced = eta_series(reduction.point, work)
    eta_sample = _eta_at_sample(tau0.real, tau0.imag, bits)
    with mpmath.workprec(bits + GUARD_BITS):
        tau = mpmath.mpc(tau0)
        ratio = eta_reduced / (reduction.sqrt_factor * principal_sqrt(M.c * tau + M.d) * eta_sample)
        steps = mpmath.arg(ratio) * 12 / mpmath.pi
        snapped = int(mpmath.nint(steps))
        residual = float(abs(steps - snapped) * mpmath.pi / 12)
    if residual >= SNAP_RESIDUAL:
        raise PrecisionError(f"multiplier of {M} snapped with residual {residual:.3g} rad")
    return UnityRoot24(snapped - reduction.exponent)
