from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from rademacher.exceptions import DomainError
from rademacher.special import (
    HalfIntOrder,
    bessel_I,
    bessel_I_three_halves_closed,
    bessel_J,
    bessel_J_half_closed,
    gamma_half,
    gamma_half_exact,
    rademacher_mu,
    sinh_kernel,
)

TINY = mpmath.mpf(2) ** -100


def relative(a, b):
    return abs(a - b) / abs(b)


@pytest.mark.parametrize(
    "two_x, expected",
    [(1, (Fraction(1), True)), (2, (Fraction(1), False)), (5, (Fraction(3, 4), True)), (8, (Fraction(6), False))],
)
def test_gamma_half_exact(two_x, expected):
    assert gamma_half_exact(two_x) == expected


def test_gamma_half_matches_mpmath(ctx):
    with mpmath.workprec(ctx.bits):
        for two_x in range(1, 30):
            assert relative(gamma_half(two_x, ctx), mpmath.gamma(mpmath.mpf(two_x) / 2)) < TINY


def test_gamma_half_domain():
    with pytest.raises(DomainError):
        gamma_half_exact(0)


def test_negative_order_rejected():
    with pytest.raises(DomainError):
        HalfIntOrder(-1)


@pytest.mark.parametrize("two_nu", [3, 5, 12, 26])
@pytest.mark.parametrize("z", ["0.01", "1", "10", "40"])
def test_bessel_I_matches_mpmath(ctx, two_nu, z):
    nu = HalfIntOrder(two_nu)
    with mpmath.workprec(ctx.bits + 16):
        z = mpmath.mpf(z)
        expected = mpmath.besseli(mpmath.mpf(two_nu) / 2, z)
        assert relative(bessel_I(nu, z, ctx), expected) < TINY


@pytest.mark.parametrize("two_nu", [3, 5, 12, 26])
@pytest.mark.parametrize("z", ["0.5", "4.2", "17"])
def test_bessel_J_matches_mpmath(ctx, two_nu, z):
    nu = HalfIntOrder(two_nu)
    with mpmath.workprec(ctx.bits + 16):
        z = mpmath.mpf(z)
        expected = mpmath.besselj(mpmath.mpf(two_nu) / 2, z)
        assert abs(bessel_J(nu, z, ctx) - expected) < TINY


def test_bessel_domains(ctx):
    with pytest.raises(DomainError):
        bessel_J(HalfIntOrder(3), -1, ctx)
    with pytest.raises(DomainError):
        bessel_I(HalfIntOrder(3), -1, ctx)
    with pytest.raises(DomainError):
        bessel_I(HalfIntOrder(3), mpmath.mpc(1, 1), ctx)
    with pytest.raises(DomainError):
        bessel_I_three_halves_closed(0, ctx)


def test_bessel_at_zero(ctx):
    assert bessel_I(HalfIntOrder(0), 0, ctx) == 1
    assert bessel_J(HalfIntOrder(3), 0, ctx) == 0


def test_three_halves_closed_form(ctx):
    with mpmath.workprec(ctx.bits + 16):
        for z in mpmath.linspace(mpmath.log(mpmath.mpf("0.001")), mpmath.log(30), 25):
            z = mpmath.exp(z)
            assert relative(bessel_I(HalfIntOrder(3), z, ctx), bessel_I_three_halves_closed(z, ctx)) < mpmath.mpf(2) ** -64


def test_half_order_closed_form(ctx):
    with mpmath.workprec(ctx.bits + 16):
        for z in ("0.3", "2", "9.5"):
            z = mpmath.mpf(z)
            assert abs(bessel_J(HalfIntOrder(1), z, ctx) - bessel_J_half_closed(z, ctx)) < TINY


def test_i_and_j_are_related(ctx):
    # J_nu(ix) = e^{i pi nu/2} I_nu(x)
    with mpmath.workprec(ctx.bits + 16):
        for two_nu in (3, 7, 26):
            x = mpmath.mpf(5)
            lhs = bessel_J(HalfIntOrder(two_nu), mpmath.mpc(0, x), ctx)
            rhs = mpmath.expjpi(mpmath.mpf(two_nu) / 4) * bessel_I(HalfIntOrder(two_nu), x, ctx)
            assert relative(lhs, rhs) < mpmath.mpf(2) ** -64


def test_sinh_kernel_is_the_derivative(ctx):
    n, c = 5, 3
    with mpmath.workprec(ctx.bits + 16):
        mu = rademacher_mu()

        def f(x):
            t = mpmath.sqrt(x - mpmath.mpf(1) / 24)
            return mpmath.sinh(mu * t / c) / t

        assert relative(sinh_kernel(n, c, ctx), mpmath.diff(f, n)) < mpmath.mpf(10) ** -25


def test_sinh_kernel_decay(ctx):
    with mpmath.workprec(ctx.bits + 16):
        limit = rademacher_mu() ** 3 / 6
        large = sinh_kernel(1, 10**4, ctx)
        assert relative(large * mpmath.mpf(10) ** 12, limit) < mpmath.mpf(10) ** -6
        ratio = large / sinh_kernel(1, 10**3, ctx)
        assert abs(ratio * 1000 - 1) < mpmath.mpf("0.01")


def test_sinh_kernel_domain(ctx):
    with pytest.raises(DomainError):
        sinh_kernel(0, 1, ctx)
    with pytest.raises(DomainError):
        sinh_kernel(1, 0, ctx)


@pytest.mark.parametrize("two_nu", [0, 3, 13, 25])
@pytest.mark.parametrize("z", ["0.5", "5", "20", "40"])
def test_tighter_cutoff_moves_little(ctx, two_nu, z):
    nu, z = HalfIntOrder(two_nu), mpmath.mpf(z)
    tighter = ctx.with_bits(ctx.bits + 8)
    bound = mpmath.mpf(2) ** (8 - ctx.bits)
    for bessel in (bessel_J, bessel_I):
        coarse, fine = bessel(nu, z, ctx), bessel(nu, z, tighter)
        with mpmath.workprec(tighter.bits + 16):
            assert abs(coarse - fine) < bound * max(1, abs(fine))
