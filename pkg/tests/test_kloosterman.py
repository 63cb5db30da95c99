from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from rademacher.exact import mobius, totient
from rademacher.exceptions import DomainError
from rademacher.kloosterman import (
    RationalIndex24,
    known_multipliers,
    kloosterman_sum,
    kloosterman_symmetry_check,
    kloosterman_term,
    multiplier_exponent,
    seed_multipliers,
)
from rademacher.modular import S, complete_bottom_row, eta_multiplier

TINY = mpmath.mpf(2) ** -64


def test_rational_index():
    assert RationalIndex24.of("1/24").t == 1
    assert RationalIndex24.of(Fraction(1, 2)).t == 12
    assert RationalIndex24.of(-2).t == -48
    assert RationalIndex24(25).value == Fraction(25, 24)
    assert RationalIndex24(48).is_integral and not RationalIndex24(1).is_integral
    assert (RationalIndex24(5) - RationalIndex24(7)).sign() == -1
    assert abs(RationalIndex24(-3)) == RationalIndex24(3)
    assert str(RationalIndex24(-23)) == "-23/24"
    with pytest.raises(DomainError):
        RationalIndex24.of("1/48")


def test_ramanujan_sums_are_mobius(ctx):
    zero, one = RationalIndex24(0), RationalIndex24(24)
    for c in range(1, 31):
        value = kloosterman_sum(zero, one, c, ctx)
        assert abs(value.value - mobius(c)) < TINY
        assert value.term_count == totient(c)


def test_single_term_sums(ctx):
    with mpmath.workprec(ctx.bits):
        # A(-1/24, 23/24; 1) = e^{-pi i/4} and A(-23/24, 1/24; 1) = e^{pi i/4}
        first = kloosterman_sum(RationalIndex24(-1), RationalIndex24(23), 1, ctx).value
        second = kloosterman_sum(RationalIndex24(-23), RationalIndex24(1), 1, ctx).value
        assert abs(first - mpmath.expjpi(mpmath.mpf(-1) / 4)) < TINY
        assert abs(second - mpmath.expjpi(mpmath.mpf(1) / 4)) < TINY


def test_sum_needs_positive_modulus(ctx):
    with pytest.raises(DomainError):
        kloosterman_sum(RationalIndex24(0), RationalIndex24(24), 0, ctx)


def test_trivial_bound(ctx):
    for c in (7, 12, 25):
        value = kloosterman_sum(RationalIndex24(-1), RationalIndex24(47), c, ctx)
        assert abs(value.value) <= value.term_count + TINY


@pytest.mark.parametrize("c, d", [(7, 3), (12, 5), (25, -4)])
def test_terms_do_not_depend_on_the_completion(ctx, c, d):
    m, n = RationalIndex24(-23), RationalIndex24(1)
    M = complete_bottom_row(c, d)
    base = kloosterman_term(m, n, M, ctx)
    for other in (S @ M, M @ S, S**2 @ M @ S**-1):
        assert abs(kloosterman_term(m, n, other, ctx) - base) < TINY


def test_symmetry_relation(ctx):
    for n in range(1, 6):
        for c in range(1, 13):
            assert kloosterman_symmetry_check(n, c, ctx) < TINY


def test_symmetry_rejects_n(ctx):
    with pytest.raises(DomainError):
        kloosterman_symmetry_check(0, 3, ctx)


def test_multiplier_memo(ctx, empty_multiplier_cache):
    expected = eta_multiplier(complete_bottom_row(11, 4), ctx).e
    assert multiplier_exponent(11, 4, ctx) == expected
    assert known_multipliers() == {(11, 4): expected}


def test_seeding_keeps_known_values(ctx, empty_multiplier_cache):
    assert seed_multipliers([(5, 2, 30), (5, 3, 1)]) == 2
    assert known_multipliers() == {(5, 2): 6, (5, 3): 1}
    assert seed_multipliers([(5, 2, 0)]) == 0
    assert multiplier_exponent(5, 2, ctx) == 6


def test_symmetry_at_seven_modulo_twelve(ctx):
    assert kloosterman_symmetry_check(7, 12, ctx) < mpmath.mpf(2) ** -100
