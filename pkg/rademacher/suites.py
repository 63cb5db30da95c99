"""Self-verification suites run by ``rademacher verify``.

Each suite yields :class:`CheckResult` rows; a check that raises a package
error counts as failed with the error text as its detail.  ``quick`` shrinks
every range so that ``verify all --quick`` stays interactive.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, replace
from typing import Callable, Dict, Iterable, Iterator, List

import mpmath

from .exact import mobius, p_r_exact_table
from .exceptions import DomainError, RademacherError
from .kloosterman import RationalIndex24, kloosterman_sum, kloosterman_symmetry_check
from .modular import (
    GUARD_BITS,
    IDENTITY,
    ModularMatrix,
    S,
    T,
    complete_bottom_row,
    eta_eval,
    eta_multiplier,
    principal_sqrt,
)
from .partitions import (
    certify_range,
    consistency_classical_vs_poincare,
    expansion_of_zero,
    p1_classical,
    zeta14_from_identity,
)
from .poincare import eisenstein_coeff, eisenstein_coeff_series, zeta_even
from .precision import PrecisionContext
from .special import HalfIntOrder, bessel_I, bessel_I_three_halves_closed, bessel_J

logger = logging.getLogger(__name__)

SUITES = ("multiplier", "kloosterman", "bessel", "identities", "partitions")
RESIDUAL_BITS = 64
# away from the sample point used for snapping
CHECK_POINT = complex(-0.23, 0.91)
SEED = 20240229
HEADLINE_MARGIN = 1e-3


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def _check(suite: str, name: str, run: Callable[[], tuple]) -> CheckResult:
    try:
        passed, detail = run()
    except RademacherError as exc:
        return CheckResult(suite, name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(suite, name, bool(passed), detail)


def _small() -> mpmath.mpf:
    return mpmath.ldexp(1, -RESIDUAL_BITS)


def random_matrices(count: int, c_bound: int, seed: int = SEED) -> List[ModularMatrix]:
    """``count`` matrices with 1 <= |c| <= c_bound, reproducible from ``seed``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        c = rng.randint(1, c_bound)
        d = rng.randint(-3 * c_bound, 3 * c_bound)
        try:
            M = complete_bottom_row(c, d)
        except DomainError:
            continue
        out.append(-M if rng.random() < 0.5 else M)
    return out


def _multiplier_suite(ctx: PrecisionContext, quick: bool) -> Iterator[CheckResult]:
    name = "multiplier"
    for label, M, expected in (("v(S)", S, 1), ("v(T)", T, 21), ("v(-I)", -IDENTITY, 6)):
        yield _check(name, f"{label} = e^(2 pi i {expected}/24)", lambda M=M, expected=expected: (
            eta_multiplier(M, ctx).e == expected,
            f"exponent {eta_multiplier(M, ctx).e}",
        ))

    tau = mpmath.mpc(CHECK_POINT)
    eta_tau = eta_eval(tau, ctx)

    def transformation(M: ModularMatrix) -> tuple:
        v = eta_multiplier(M, ctx)
        lhs = eta_eval(M.act(tau, ctx.bits + GUARD_BITS), ctx)
        with mpmath.workprec(ctx.bits + GUARD_BITS):
            rhs = v.value() * principal_sqrt(M.c * tau + M.d) * eta_tau
            residual = abs(lhs - rhs) / abs(rhs)
        return residual < _small(), f"relative residual {mpmath.nstr(residual, 3)}"

    matrices = random_matrices(10 if quick else 100, 50)
    results = [_check(name, f"transformation law for {M}", lambda M=M: transformation(M)) for M in matrices]
    failed = [r for r in results if not r.passed]
    yield CheckResult(
        name,
        f"transformation law on {len(results)} random matrices, |c| <= 50",
        not failed,
        failed[0].detail if failed else "",
    )


def _kloosterman_suite(ctx: PrecisionContext, quick: bool) -> Iterator[CheckResult]:
    name = "kloosterman"
    n_max, c_max = (5, 12) if quick else (20, 50)

    def symmetry() -> tuple:
        worst = max(kloosterman_symmetry_check(n, c, ctx) for n in range(1, n_max + 1) for c in range(1, c_max + 1))
        return worst < _small(), f"largest residual {mpmath.nstr(worst, 3)}"

    yield _check(name, f"phase relation for n <= {n_max}, c <= {c_max}", symmetry)

    ramanujan_max = 30 if quick else 100

    def ramanujan() -> tuple:
        zero, one = RationalIndex24(0), RationalIndex24(24)
        bad = [
            c
            for c in range(1, ramanujan_max + 1)
            if abs(kloosterman_sum(zero, one, c, ctx).value - mobius(c)) >= _small()
        ]
        return not bad, f"mismatch at c = {bad[0]}" if bad else ""

    yield _check(name, f"A(0, 1; c) = mobius(c) for c <= {ramanujan_max}", ramanujan)


def _bessel_suite(ctx: PrecisionContext, quick: bool) -> Iterator[CheckResult]:
    name = "bessel"
    points = 10 if quick else 50
    three_halves = HalfIntOrder(3)

    def closed_form() -> tuple:
        worst = mpmath.mpf(0)
        with mpmath.workprec(ctx.bits + GUARD_BITS):
            for z in mpmath.linspace(mpmath.log(mpmath.mpf(10) ** -3), mpmath.log(30), points):
                z = mpmath.exp(z)
                series = bessel_I(three_halves, z, ctx)
                closed = bessel_I_three_halves_closed(z, ctx)
                worst = max(worst, abs(series - closed) / closed)
        return worst < _small(), f"largest relative error {mpmath.nstr(worst, 3)}"

    yield _check(name, f"I_3/2 series = closed form on {points} points of [1e-3, 30]", closed_form)

    def i_versus_j() -> tuple:
        worst = mpmath.mpf(0)
        with mpmath.workprec(ctx.bits + GUARD_BITS):
            for two_nu in range(3, 27):
                order = HalfIntOrder(two_nu)
                for x in (mpmath.mpf("0.5"), mpmath.mpf(3), mpmath.mpf(12)):
                    # J_nu(ix) = e^{i pi nu / 2} I_nu(x)
                    lhs = bessel_J(order, mpmath.mpc(0, x), ctx)
                    rhs = mpmath.expjpi(mpmath.mpf(two_nu) / 4) * bessel_I(order, x, ctx)
                    worst = max(worst, abs(lhs - rhs) / abs(rhs))
        return worst < _small(), f"largest relative error {mpmath.nstr(worst, 3)}"

    yield _check(name, "J_nu(ix) = e^(i pi nu/2) I_nu(x) for nu = 3/2, ..., 13", i_versus_j)


def _identities_suite(ctx: PrecisionContext, quick: bool) -> Iterator[CheckResult]:
    name = "identities"
    identity = zeta14_from_identity(ctx)
    yield CheckResult(name, "B_14 = 28 / p_24(1) = 7/6", identity.b14 == identity.b14_recurrence, f"B_14 = {identity.b14}")
    yield CheckResult(
        name,
        "zeta(14) from B_14 matches the Dirichlet series to 1e-12",
        identity.relative_error < mpmath.mpf(10) ** -12,
        f"zeta(14) = {mpmath.nstr(identity.zeta14, 15)}",
    )
    yield CheckResult(name, "-c_1(E_14) = p_24(1) = 24", identity.eisenstein_check == 24, str(identity.eisenstein_check))
    yield CheckResult(name, "analytic p_24(1) = 24", identity.p24_1_analytic == 24, str(identity.p24_1_analytic))

    def zeta_two() -> tuple:
        with mpmath.workprec(ctx.bits + GUARD_BITS):
            error = abs(zeta_even(2, ctx) - mpmath.pi**2 / 6)
        return error < _small(), mpmath.nstr(error, 3)

    yield _check(name, "zeta(2) = pi^2/6", zeta_two)

    weights, n_max, c_max = ((4, 14), 2, 100) if quick else ((4, 6, 8, 14), 5, 1000)
    for k in weights:
        for n in range(1, n_max + 1):

            def eisenstein(k: int = k, n: int = n) -> tuple:
                exact = eisenstein_coeff(k, n)
                series = eisenstein_coeff_series(k, n, ctx, c_max=c_max).value
                error = abs(mpmath.re(series) / (mpmath.mpf(exact.numerator) / exact.denominator) - 1)
                return error < mpmath.mpf("0.01"), f"relative error {mpmath.nstr(error, 3)}"

            yield _check(name, f"Eisenstein k = {k}, n = {n} at c <= {c_max}", eisenstein)

    for r in (12, 24):
        for n in range(1, 2 if quick else 6):

            def vanishing(r: int = r, n: int = n) -> tuple:
                zero = expansion_of_zero(r, n, ctx)
                return zero.magnitude < mpmath.mpf(10) ** -6, f"{mpmath.nstr(zero.magnitude, 3)} at c <= {zero.c_max}"

            yield _check(name, f"expansion of zero r = {r}, n = {n}", vanishing)


def _partitions_suite(ctx: PrecisionContext, quick: bool) -> Iterator[CheckResult]:
    name = "partitions"
    colors, n_max = ((1, 2, 12, 24), 5) if quick else (tuple(range(1, 25)), 60)
    for r in colors:

        def sweep(r: int = r) -> tuple:
            bad = [count.n for count in certify_range(r, n_max, ctx) if not count.certified]
            return not bad, f"failed at n = {bad}" if bad else ""

        yield _check(name, f"p_{r}(1..{n_max}) certified", sweep)

    for n in (10,) if quick else (100, 200):

        def headline(n: int = n) -> tuple:
            tight = replace(ctx, rounding_margin=HEADLINE_MARGIN, integer_tolerance=HEADLINE_MARGIN / 4)
            count = p1_classical(n, tight, certify=True).check()
            return count.margin < HEADLINE_MARGIN, f"{count.rounded}, margin {count.margin:.3g}"

        yield _check(name, f"p({n}) from the sinh-kernel series", headline)

    for n in (1, 10) if quick else (1, 10, 50, 100, 200):

        def consistency(n: int = n) -> tuple:
            report = consistency_classical_vs_poincare(n, ctx)
            bound = mpmath.mpf(10) ** -6 * p_r_exact_table(1, n)[n]
            return report.residual < bound, f"residual {mpmath.nstr(report.residual, 3)}"

        yield _check(name, f"sinh-kernel and Poincare pipelines agree for n = {n}", consistency)


_REGISTRY: Dict[str, Callable[[PrecisionContext, bool], Iterable[CheckResult]]] = {
    "multiplier": _multiplier_suite,
    "kloosterman": _kloosterman_suite,
    "bessel": _bessel_suite,
    "identities": _identities_suite,
    "partitions": _partitions_suite,
}


def run_suite(name: str, ctx: PrecisionContext, quick: bool = False) -> List[CheckResult]:
    """Run one suite, or every suite for ``"all"``."""
    if name == "all":
        names = SUITES
    elif name in _REGISTRY:
        names = (name,)
    else:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    results: List[CheckResult] = []
    for suite in names:
        logger.info("running suite %s%s", suite, " (quick)" if quick else "")
        results.extend(_REGISTRY[suite](ctx, quick))
    return results
