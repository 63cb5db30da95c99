"""Exact integer oracle for partition numbers.

Everything here is plain integer (or :class:`fractions.Fraction`) arithmetic:
the pentagonal-number recurrence for p(n), the logarithmic-derivative
recurrence for the r-color numbers p_r(n), divisor sums and Bernoulli numbers.
The Möbius and Euler functions used as independent oracles by the Kloosterman
checks come from sympy.  Every analytic result in the package is certified
against these values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt
from typing import Tuple

import sympy

from .exceptions import DomainError


@dataclass(frozen=True)
class PartitionTable:
    """Values p_r(0), ..., p_r(N) for a fixed number of colors ``r``."""

    r: int
    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.values or self.values[0] != 1:
            raise ValueError("p_r(0) must be 1")
        if len(self.values) > 1 and self.values[1] != self.r:
            raise ValueError("p_r(1) must be r")

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def N(self) -> int:
        return len(self.values) - 1


def _pentagonal_offsets(n: int):
    """Yield (sign, offset) for the generalized pentagonal numbers <= n."""
    j = 1
    while True:
        first = j * (3 * j - 1) // 2
        if first > n:
            return
        sign = 1 if j % 2 else -1
        yield sign, first
        second = j * (3 * j + 1) // 2
        if second <= n:
            yield sign, second
        j += 1


@lru_cache(maxsize=32)
def _pentagonal_table(N: int) -> Tuple[int, ...]:
    p = [1] + [0] * N
    for n in range(1, N + 1):
        total = 0
        for sign, offset in _pentagonal_offsets(n):
            total += sign * p[n - offset]
        p[n] = total
    return tuple(p)


def p_exact(n: int) -> int:
    """Number of partitions of ``n`` via Euler's pentagonal recurrence."""
    if n < 0:
        raise DomainError(f"p(n) needs n >= 0, got {n}")
    # round the table size up so neighbouring queries share one table
    size = 64
    while size < n:
        size *= 2
    return _pentagonal_table(size)[n]


def sigma(e: int, n: int) -> int:
    """Sum of the ``e``-th powers of the positive divisors of ``n``."""
    if n <= 0:
        raise DomainError(f"sigma needs n >= 1, got {n}")
    if e < 0:
        raise DomainError(f"sigma needs e >= 0, got {e}")
    total = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            total += d**e
            q = n // d
            if q != d:
                total += q**e
    return total


def _sigma_table(e: int, N: int) -> list[int]:
    table = [0] * (N + 1)
    for d in range(1, N + 1):
        power = d**e
        for multiple in range(d, N + 1, d):
            table[multiple] += power
    return table


@lru_cache(maxsize=256)
def _color_table(r: int, N: int) -> Tuple[int, ...]:
    # n p_r(n) = r * sum_{j=1}^{n} sigma_1(j) p_r(n - j)
    sig = _sigma_table(1, N)
    p = [1] + [0] * N
    for n in range(1, N + 1):
        total = 0
        for j in range(1, n + 1):
            total += sig[j] * p[n - j]
        value, rest = divmod(r * total, n)
        if rest:
            raise ArithmeticError(f"non-integral p_{r}({n})")
        p[n] = value
    return tuple(p)


def p_r_exact_table(r: int, N: int) -> PartitionTable:
    """Table of the r-color partition numbers p_r(0..N)."""
    if not 1 <= r <= 24:
        raise DomainError(f"r must lie in [1, 24], got {r}")
    if N < 0:
        raise DomainError(f"N must be >= 0, got {N}")
    values = _color_table(r, N)
    if r == 1 and values != _pentagonal_table(N):
        raise ArithmeticError("r = 1 table disagrees with the pentagonal recurrence")
    return PartitionTable(r=r, values=values)


def p_r_convolution_table(r: int, N: int) -> PartitionTable:
    """Same table as :func:`p_r_exact_table`, built as the r-fold power of the r = 1 series."""
    if not 1 <= r <= 24:
        raise DomainError(f"r must lie in [1, 24], got {r}")
    base = _pentagonal_table(N)
    power = [1] + [0] * N
    for _ in range(r):
        power = [sum(power[i] * base[n - i] for i in range(n + 1)) for n in range(N + 1)]
    return PartitionTable(r=r, values=tuple(power))


@lru_cache(maxsize=1)
def _bernoulli_table(k_max: int) -> Tuple[Fraction, ...]:
    # sum_{j=0}^{k} C(k+1, j) B_j = 0, first convention B_1 = -1/2
    B = [Fraction(1)]
    for k in range(1, k_max + 1):
        s = sum(comb(k + 1, j) * B[j] for j in range(k))
        B.append(-s / (k + 1))
    return tuple(B)


def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number B_k with B_1 = -1/2."""
    if k < 0:
        raise DomainError(f"B_k needs k >= 0, got {k}")
    size = 32
    while size < k:
        size *= 2
    return _bernoulli_table(size)[k]


def mobius(n: int) -> int:
    """Möbius function (sympy), the oracle for the Ramanujan-sum check."""
    if n <= 0:
        raise DomainError(f"mobius needs n >= 1, got {n}")
    return int(sympy.mobius(n))


def totient(n: int) -> int:
    """Euler's phi."""
    if n <= 0:
        raise DomainError(f"totient needs n >= 1, got {n}")
    return int(sympy.totient(n))
