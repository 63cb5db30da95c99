from __future__ import annotations

from dataclasses import replace

import mpmath
import pytest

from rademacher.exceptions import DomainError
from rademacher.modular import (
    IDENTITY,
    S,
    T,
    ModularMatrix,
    UnityRoot24,
    complete_bottom_row,
    eta_eval,
    eta_multiplier,
    eta_product,
    eta_series,
    principal_sqrt,
    reduce_to_fundamental_domain,
)
from rademacher.suites import random_matrices

TAU = mpmath.mpc(-0.23, 0.91)


def test_determinant_is_checked():
    with pytest.raises(DomainError):
        ModularMatrix(1, 1, 1, 1)


def test_group_relations():
    assert T @ T == -IDENTITY
    assert (S @ T) ** 3 == -IDENTITY
    assert S**3 == ModularMatrix(1, 3, 0, 1)
    assert S**-2 == ModularMatrix(1, -2, 0, 1)
    M = ModularMatrix(5, 2, 7, 3)
    assert M @ M.inverse() == IDENTITY


def test_action():
    with mpmath.workprec(100):
        assert abs(T.act(1j) - 1j) < mpmath.mpf(2) ** -90
        assert abs(S.act(TAU) - (TAU + 1)) < mpmath.mpf(2) ** -90


def test_unity_root_arithmetic():
    assert UnityRoot24(25).e == 1
    assert UnityRoot24(-1).e == 23
    assert (UnityRoot24(20) * UnityRoot24(7)).e == 3
    assert (UnityRoot24(5) ** 5).e == 1
    assert UnityRoot24(5).inverse().e == 19
    with mpmath.workprec(100):
        assert abs(UnityRoot24(6).value() - 1j) < mpmath.mpf(2) ** -90


def test_principal_sqrt_branch():
    assert principal_sqrt(-1) == mpmath.mpc(0, -1)
    assert principal_sqrt(-4) == mpmath.mpc(0, -2)
    assert principal_sqrt(4) == 2
    with pytest.raises(DomainError):
        principal_sqrt(0)


def test_product_and_series_agree(ctx):
    for tau in (TAU, mpmath.mpc(0.4, 0.6), mpmath.mpc(0, 2)):
        with mpmath.workprec(ctx.bits):
            assert abs(eta_product(tau, ctx) - eta_series(tau, ctx)) < mpmath.mpf(2) ** -110


def test_eta_at_i(ctx):
    # eta(i) = Gamma(1/4) / (2 pi^{3/4})
    with mpmath.workprec(ctx.bits + 16):
        expected = mpmath.gamma(mpmath.mpf(1) / 4) / (2 * mpmath.pi ** (mpmath.mpf(3) / 4))
        assert abs(eta_eval(mpmath.mpc(0, 1), ctx) - expected) < mpmath.mpf(2) ** -110


def test_eta_eval_reduces_low_points(ctx):
    tau = mpmath.mpc(0.3, 0.2)
    with mpmath.workprec(ctx.bits):
        assert abs(eta_eval(tau, ctx) - eta_product(tau, ctx)) < mpmath.mpf(2) ** -100


def test_eta_rejects_lower_half_plane(ctx):
    with pytest.raises(DomainError):
        eta_series(mpmath.mpc(0, -1), ctx)


def test_reduction_lands_in_fundamental_domain(ctx):
    M = complete_bottom_row(37, 11)
    reduction = reduce_to_fundamental_domain(M, TAU, ctx)
    with mpmath.workprec(ctx.bits):
        assert abs(reduction.point.real) <= 0.5 + 1e-20
        assert abs(reduction.point) >= 1 - 1e-20
        assert abs((reduction.word @ M).act(TAU) - reduction.point) < mpmath.mpf(2) ** -100


def test_complete_bottom_row():
    assert complete_bottom_row(5, 2) == ModularMatrix(3, 1, 5, 2)
    assert complete_bottom_row(1, 4) == ModularMatrix(0, -1, 1, 4)
    with pytest.raises(DomainError):
        complete_bottom_row(6, 4)
    with pytest.raises(DomainError):
        complete_bottom_row(0, 1)


@pytest.mark.parametrize(
    "M, exponent",
    [
        (S, 1),
        (T, 21),
        (-IDENTITY, 6),
        (IDENTITY, 0),
        (ModularMatrix(1, 5, 0, 1), 5),
        (ModularMatrix(1, 0, 2, 1), 22),
    ],
)
def test_known_multipliers(ctx, M, exponent):
    assert eta_multiplier(M, ctx).e == exponent


def test_translations_shift_the_exponent(ctx):
    M = complete_bottom_row(13, 5)
    base = eta_multiplier(M, ctx).e
    for k in (1, 2, -3):
        assert eta_multiplier(S**k @ M, ctx).e == (base + k) % 24
        assert eta_multiplier(M @ S**k, ctx).e == (base + k) % 24


def test_transformation_law(ctx):
    eta_tau = eta_eval(TAU, ctx)
    for M in random_matrices(8, 20):
        v = eta_multiplier(M, ctx)
        lhs = eta_eval(M.act(TAU, ctx.bits + 16), ctx)
        with mpmath.workprec(ctx.bits + 16):
            rhs = v.value() * principal_sqrt(M.c * TAU + M.d) * eta_tau
            assert abs(lhs - rhs) / abs(rhs) < mpmath.mpf(2) ** -64


def test_action_at_requested_precision():
    M = complete_bottom_row(37, 11)
    with mpmath.workprec(256):
        tau = mpmath.mpc(TAU)
        expected = (M.a * tau + M.b) / (M.c * tau + M.d)
    assert M.act(TAU, 256) == expected
    # the default image is rounded to 53 bits
    assert M.act(TAU) != expected
    assert abs(M.act(TAU) - expected) < 1e-12


def test_multiplier_ignores_the_sample_point(ctx):
    points = (complex(0.1, 0.7), complex(-0.3, 1.1), complex(0.45, 0.6))
    for M in random_matrices(15, 30):
        exponents = {eta_multiplier(M, replace(ctx, sample_point=point)).e for point in points}
        assert len(exponents) == 1, M


def test_squared_multiplier_is_a_character(ctx):
    matrices = random_matrices(12, 6, seed=11)
    for M1, M2 in zip(matrices, matrices[1:]):
        e1, e2 = eta_multiplier(M1, ctx).e, eta_multiplier(M2, ctx).e
        product = eta_multiplier(M1 @ M2, ctx).e
        assert (2 * product - 2 * e1 - 2 * e2) % 24 == 0, (M1, M2)
