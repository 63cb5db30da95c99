"""Generalized Kloosterman sums twisted by the eta multiplier.

    A(m, n; c) = sum_{d mod c, (c, d) = 1} v_eta(M)^{-24m} e^{2 pi i (m a + n d)/c}

with M = [a *; c d] and indices m, n in (1/24)Z.  The multiplier power is
integer arithmetic on exponents mod 24 and the phase (m a + n d)/c is an exact
rational reduced mod 1, so the only floating step is one complex exponential
per residue.

Multiplier exponents depend on (c, d) alone; they are memoized here and can be
seeded from / dumped to the persistent store (see :mod:`rademacher.repo`).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, Tuple, Union

import mpmath

from .exceptions import DomainError
from .modular import (
    GUARD_BITS,
    ComplexHP,
    ModularMatrix,
    complete_bottom_row,
    eta_multiplier,
)
from .precision import PrecisionContext

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class RationalIndex24:
    """An element t/24 of (1/24)Z, stored as the integer t."""

    t: int

    @classmethod
    def of(cls, value: Union[int, Fraction, str]) -> RationalIndex24:
        value = Fraction(value)
        scaled = value * 24
        if scaled.denominator != 1:
            raise DomainError(f"{value} is not in (1/24)Z")
        return cls(int(scaled))

    @property
    def value(self) -> Fraction:
        return Fraction(self.t, 24)

    @property
    def is_integral(self) -> bool:
        return self.t % 24 == 0

    def sign(self) -> int:
        return (self.t > 0) - (self.t < 0)

    def __add__(self, other: RationalIndex24) -> RationalIndex24:
        return RationalIndex24(self.t + other.t)

    def __sub__(self, other: RationalIndex24) -> RationalIndex24:
        return RationalIndex24(self.t - other.t)

    def __neg__(self) -> RationalIndex24:
        return RationalIndex24(-self.t)

    def __abs__(self) -> RationalIndex24:
        return RationalIndex24(abs(self.t))

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class KloostermanValue:
    """A(m, n; c) together with the number of unit-modulus terms summed."""

    value: ComplexHP
    c: int
    term_count: int


_multipliers: Dict[Tuple[int, int], int] = {}


def seed_multipliers(items: Iterable[Tuple[int, int, int]]) -> int:
    """Preload (c, d, exponent) triples, e.g. from the store.  Returns how many were new."""
    added = 0
    for c, d, exponent in items:
        if (c, d) not in _multipliers:
            _multipliers[(c, d)] = exponent % 24
            added += 1
    logger.debug("seeded %d multiplier exponents (%d known)", added, len(_multipliers))
    return added


def known_multipliers() -> Dict[Tuple[int, int], int]:
    """Snapshot of the memoized multiplier exponents keyed by (c, d)."""
    return dict(_multipliers)


def multiplier_exponent(c: int, d: int, ctx: PrecisionContext) -> int:
    """Exponent of v_eta(complete_bottom_row(c, d)), memoized on (c, d)."""
    key = (c, d)
    exponent = _multipliers.get(key)
    if exponent is None:
        exponent = eta_multiplier(complete_bottom_row(c, d), ctx).e
        _multipliers[key] = exponent
    return exponent


@lru_cache(maxsize=4096)
def _residues(c: int) -> Tuple[Tuple[int, int], ...]:
    """Pairs (d, a) with d in [0, c) coprime to c and a = d^{-1} mod c in [0, c)."""
    if c == 1:
        return ((0, 0),)
    return tuple((d, pow(d, -1, c)) for d in range(1, c) if gcd(c, d) == 1)


def _phase(m: RationalIndex24, n: RationalIndex24, c: int, a: int, d: int, exponent: int) -> Fraction:
    # v^{-24m} contributes exponent * (-t_m) / 24; (m a + n d)/c = (t_m a + t_n d)/(24 c)
    return Fraction(-exponent * m.t * c + m.t * a + n.t * d, 24 * c) % 1


def _unit(angle: Fraction) -> ComplexHP:
    return mpmath.expjpi(mpmath.mpf(2 * angle.numerator) / angle.denominator)


def kloosterman_term(m: RationalIndex24, n: RationalIndex24, M: ModularMatrix, ctx: PrecisionContext) -> ComplexHP:
    """One summand v_eta(M)^{-24m} e^{2 pi i (m a + n d)/c} for an arbitrary completion M."""
    if M.c <= 0:
        raise DomainError(f"c must be positive, got {M.c}")
    exponent = eta_multiplier(M, ctx).e
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        return _unit(_phase(m, n, M.c, M.a, M.d, exponent))


def kloosterman_sum(m: RationalIndex24, n: RationalIndex24, c: int, ctx: PrecisionContext) -> KloostermanValue:
    """A(m, n; c) summed over the residues d in [0, c) coprime to c."""
    if c <= 0:
        raise DomainError(f"c must be positive, got {c}")
    residues = _residues(c)
    # v^{24} = 1, so integral m never needs the multiplier
    needs_multiplier = not m.is_integral
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        terms = []
        for d, a in residues:
            exponent = multiplier_exponent(c, d, ctx) if needs_multiplier else 0
            terms.append(_unit(_phase(m, n, c, a, d, exponent)))
        value = mpmath.fsum(terms)
    return KloostermanValue(value=value, c=c, term_count=len(residues))


def kloosterman_symmetry_check(n: int, c: int, ctx: PrecisionContext) -> mpmath.mpf:
    """|i^{-1/2} A(-n + 1/24, 1/24; c) - i^{1/2} A(-1/24, n - 1/24; c)|."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    left = kloosterman_sum(RationalIndex24(1 - 24 * n), RationalIndex24(1), c, ctx).value
    right = kloosterman_sum(RationalIndex24(-1), RationalIndex24(24 * n - 1), c, ctx).value
    with mpmath.workprec(ctx.bits + GUARD_BITS):
        return abs(mpmath.expjpi(mpmath.mpf(-1) / 4) * left - mpmath.expjpi(mpmath.mpf(1) / 4) * right)

