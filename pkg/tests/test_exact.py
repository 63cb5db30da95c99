from __future__ import annotations

from fractions import Fraction
from math import gcd

import pytest

from rademacher.exact import (
    PartitionTable,
    bernoulli,
    mobius,
    p_exact,
    p_r_convolution_table,
    p_r_exact_table,
    sigma,
    totient,
)
from rademacher.exceptions import DomainError

from .conftest import partitions_of

PRIMES = [p for p in range(2, 100) if all(p % q for q in range(2, p))]


@pytest.mark.parametrize("n, expected", [(0, 1), (5, 7), (10, 42), (100, 190569292), (200, 3972999029388)])
def test_p_exact_values(n, expected):
    assert p_exact(n) == expected


def test_p_exact_matches_enumeration():
    for n in range(26):
        assert p_exact(n) == sum(1 for _ in partitions_of(n))


def test_p_exact_rejects_negative():
    with pytest.raises(DomainError):
        p_exact(-1)


@pytest.mark.parametrize(
    "r, N, expected",
    [
        (1, 5, (1, 1, 2, 3, 5, 7)),
        (2, 2, (1, 2, 5)),
        (24, 1, (1, 24)),
        (3, 3, (1, 3, 9, 22)),
    ],
)
def test_p_r_exact_table_examples(r, N, expected):
    table = p_r_exact_table(r, N)
    assert table.values == expected
    assert table.N == N
    assert len(table) == N + 1


def test_two_colors_of_two_by_enumeration():
    # 2a, 2b, 1a+1a, 1a+1b, 1b+1b
    colored = set()
    for parts in partitions_of(2):
        for colors in range(2 ** len(parts)):
            labelled = tuple(sorted((part, (colors >> i) & 1) for i, part in enumerate(parts)))
            colored.add(labelled)
    assert len(colored) == p_r_exact_table(2, 2)[2] == 5


def test_log_derivative_recurrence_matches_convolution():
    for r in range(1, 25):
        assert p_r_exact_table(r, 60).values == p_r_convolution_table(r, 60).values


def test_tables_are_monotone():
    for r in (1, 5, 24):
        values = p_r_exact_table(r, 40).values
        assert all(a <= b for a, b in zip(values, values[1:]))
        assert min(values) >= 1


@pytest.mark.parametrize("r", [0, 25, -3])
def test_p_r_exact_table_rejects_r(r):
    with pytest.raises(DomainError):
        p_r_exact_table(r, 5)


def test_partition_table_validates_head():
    with pytest.raises(ValueError):
        PartitionTable(r=2, values=(2, 2))
    with pytest.raises(ValueError):
        PartitionTable(r=2, values=(1, 3))


@pytest.mark.parametrize("e, n, expected", [(3, 1, 1), (1, 6, 12), (13, 2, 8193), (0, 12, 6), (1, 28, 56)])
def test_sigma_examples(e, n, expected):
    assert sigma(e, n) == expected


def test_sigma_at_primes():
    for p in PRIMES:
        for e in range(14):
            assert sigma(e, p) == 1 + p**e


def test_sigma_rejects_nonpositive():
    with pytest.raises(DomainError):
        sigma(1, 0)


@pytest.mark.parametrize(
    "k, expected",
    [(0, Fraction(1)), (1, Fraction(-1, 2)), (2, Fraction(1, 6)), (4, Fraction(-1, 30)), (12, Fraction(-691, 2730)), (14, Fraction(7, 6))],
)
def test_bernoulli_values(k, expected):
    assert bernoulli(k) == expected


def test_bernoulli_signs_alternate():
    for j in range(1, 20):
        value = bernoulli(2 * j)
        assert value != 0
        assert (value > 0) == (j % 2 == 1)
    assert bernoulli(3) == 0 and bernoulli(15) == 0


@pytest.mark.parametrize("n, expected", [(1, 1), (2, -1), (4, 0), (6, 1), (30, -1), (12, 0), (97, -1)])
def test_mobius(n, expected):
    assert mobius(n) == expected


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (9, 6), (12, 4), (97, 96), (100, 40)])
def test_totient(n, expected):
    assert totient(n) == expected


def test_mobius_sums_to_zero_over_divisors():
    for n in range(1, 200):
        total = sum(mobius(d) for d in range(1, n + 1) if n % d == 0)
        assert total == (1 if n == 1 else 0)


def test_totient_counts_units():
    for n in range(1, 200):
        assert totient(n) == sum(1 for d in range(1, n + 1) if gcd(n, d) == 1)


def test_arithmetic_functions_reject_nonpositive():
    with pytest.raises(DomainError):
        mobius(0)
    with pytest.raises(DomainError):
        totient(-3)
