"""Bessel functions of half-integer order, Gamma at half-integers, sinh kernel.

Only the orders that occur for the weights 5/2 <= k <= 14 are needed, so the
order is stored exactly as twice its value and both Bessel functions are
plain power series

    J_nu(z) = sum_p (-1)^p (z/2)^{2p+nu} / (p! Gamma(p+nu+1))
    I_nu(z) = sum_p        (z/2)^{2p+nu} / (p! Gamma(p+nu+1))

summed until the next term drops below 2^{-P-8} of the partial sum.  The
alternating J series loses about |z| log2(e) bits to cancellation; those bits
are added as guard bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Tuple

import mpmath

from .exceptions import DomainError
from .modular import GUARD_BITS, ComplexHP
from .precision import PrecisionContext, default_context

LOG2_E = 1.4426950408889634


@dataclass(frozen=True)
class HalfIntOrder:
    """A Bessel order nu = two_nu / 2 >= 0."""

    two_nu: int

    def __post_init__(self) -> None:
        if self.two_nu < 0:
            raise DomainError(f"negative order {self.two_nu}/2")

    @property
    def value(self) -> Fraction:
        return Fraction(self.two_nu, 2)


def gamma_half_exact(two_x: int) -> Tuple[Fraction, bool]:
    """Gamma(two_x / 2) as (rational coefficient, whether a factor sqrt(pi) is present)."""
    if two_x < 1:
        raise DomainError(f"Gamma(x) needs x > 0, got {two_x}/2")
    if two_x % 2 == 0:
        return Fraction(factorial(two_x // 2 - 1)), False
    j = (two_x - 1) // 2
    # Gamma(j + 1/2) = (2j)! / (4^j j!) sqrt(pi)
    return Fraction(factorial(2 * j), 4**j * factorial(j)), True


def _gamma_half_mpf(two_x: int) -> mpmath.mpf:
    coefficient, with_sqrt_pi = gamma_half_exact(two_x)
    value = mpmath.mpf(coefficient.numerator) / coefficient.denominator
    return value * mpmath.sqrt(mpmath.pi) if with_sqrt_pi else value


def gamma_half(two_x: int, ctx: Optional[PrecisionContext] = None) -> mpmath.mpf:
    """Gamma at x = two_x / 2 from Gamma(1/2) = sqrt(pi) and Gamma(x + 1) = x Gamma(x)."""
    ctx = ctx or default_context()
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        return _gamma_half_mpf(two_x)


def _power_series(nu: HalfIntOrder, z: ComplexHP, ctx: PrecisionContext, alternating: bool):
    if z == 0:
        return mpmath.mpf(1) if nu.two_nu == 0 else mpmath.mpf(0)
    guard = GUARD_BITS + (int(abs(z) * LOG2_E) if alternating else 0)
    with mpmath.workprec(ctx.bits + guard):
        half = z / 2
        order = mpmath.mpf(nu.two_nu) / 2
        term = mpmath.power(half, order) / _gamma_half_mpf(nu.two_nu + 2)
        step = -half * half if alternating else half * half
        total = term
        peak = abs(half)
        cutoff = mpmath.ldexp(1, -ctx.bits - 8)
        floor = mpmath.ldexp(1, -ctx.bits)
        p = 0
        while True:
            p += 1
            term = term * step / (p * (p + order))
            total += term
            if p > peak and abs(term) < cutoff * (abs(total) + floor):
                return total


def bessel_J(nu: HalfIntOrder, z, ctx: PrecisionContext) -> ComplexHP:
    """J_nu(z) by its power series, Re z >= 0."""
    z = mpmath.mpmathify(z)
    if mpmath.re(z) < 0:
        raise DomainError(f"J_nu needs Re z >= 0, got {z}")
    return _power_series(nu, z, ctx, alternating=True)


def bessel_I(nu: HalfIntOrder, z, ctx: PrecisionContext) -> mpmath.mpf:
    """I_nu(z) for real z >= 0; every term of the series is positive."""
    z = mpmath.mpmathify(z)
    if mpmath.im(z) != 0 or mpmath.re(z) < 0:
        raise DomainError(f"I_nu is only used on the half-line z >= 0, got {z}")
    return _power_series(nu, mpmath.re(z), ctx, alternating=False)


def _cancellation_guard(z: mpmath.mpf) -> int:
    if z >= 1:
        return GUARD_BITS
    return GUARD_BITS + 2 * int(-mpmath.log(z, 2) + 1)


def bessel_I_three_halves_closed(z, ctx: PrecisionContext) -> mpmath.mpf:
    """I_{3/2}(z) = sqrt(2/(pi z)) (cosh z - sinh(z)/z) = sqrt(2z/pi) d/dz (sinh(z)/z)."""
    z = mpmath.mpf(z)
    if z <= 0:
        raise DomainError(f"closed form needs z > 0, got {z}")
    with mpmath.workprec(ctx.bits + _cancellation_guard(z)):
        return mpmath.sqrt(2 / (mpmath.pi * z)) * (mpmath.cosh(z) - mpmath.sinh(z) / z)


def bessel_J_half_closed(z, ctx: PrecisionContext) -> mpmath.mpf:
    """J_{1/2}(z) = sqrt(2/(pi z)) sin z."""
    z = mpmath.mpf(z)
    if z <= 0:
        raise DomainError(f"closed form needs z > 0, got {z}")
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        return mpmath.sqrt(2 / (mpmath.pi * z)) * mpmath.sin(z)


def rademacher_mu() -> mpmath.mpf:
    """mu = pi sqrt(2/3) at the current working precision."""
    return mpmath.pi * mpmath.sqrt(mpmath.mpf(2) / 3)


def sinh_kernel(n: int, c: int, ctx: PrecisionContext) -> mpmath.mpf:
    """d/dn [sinh(mu sqrt(n - 1/24)/c) / sqrt(n - 1/24)] in closed form.

    With t = sqrt(n - 1/24) and x = mu t / c the derivative is
    (mu/c) cosh(x) / (2 t^2) - sinh(x) / (2 t^3); for large c it tends to
    mu^3 / (6 c^3), and the two terms cancel to about 2 log2(c) bits.
    """
    if n < 1:
        raise DomainError(f"sinh kernel needs n >= 1, got {n}")
    if c < 1:
        raise DomainError(f"c must be positive, got {c}")
    with mpmath.workprec(ctx.bits + GUARD_BITS + 2 * c.bit_length()):
        t2 = mpmath.mpf(24 * n - 1) / 24
        t = mpmath.sqrt(t2)
        scale = rademacher_mu() / c
        x = scale * t
        return scale * mpmath.cosh(x) / (2 * t2) - mpmath.sinh(x) / (2 * t2 * t)
