"""
Named property checks behind the ``selftest`` command.

Every check gets its own ``random.Random`` derived from the run seed and the
check name, so one check's draws never shift another's and a run is
reproducible from the seed alone.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field, fields
from typing import Callable, Iterable

from .bell import bell_arguments, bell_complete, bell_complete_det, bell_number
from .darboux import (
    DarbouxQuadruple,
    darboux_residual,
    factorization_quadruple,
    verify_darboux_gauge_covariance,
)
from .exceptions import KernelError
from .golden import example_d5, p_table
from .invariants import (
    conjugated_coefficient,
    invariants_bell,
    invariants_frame,
    invariants_omega,
    laplace_invariants,
    p_op,
    verify_gauge_invariance,
    verify_gauge_invariance_numeric,
)
from .operators import (
    GaugeParameter,
    LaplaceOperator,
    LinearDiffOperator,
    NormalizedM,
    gauge_action_laplace,
    gauge_conjugate,
    op_apply,
    op_compose,
    principal_symbol,
)
from .ring import X, Y, var
from .sampling import (
    random_operator,
    random_point,
    random_polynomial,
    random_quadruple,
)
from .textio import format_operator, parse_operator

logger = logging.getLogger(__name__)

# B_n(1, ..., 1) for n = 0..8
BELL_NUMBERS = (1, 1, 2, 5, 15, 52, 203, 877, 4140)

# highest index for the Bell identity checks
BELL_CHECK_ORDER = 8

# highest operator orders for compose/apply and the conjugation homomorphism
COMPOSE_APPLY_ORDER = 3
HOMOMORPHISM_ORDER = 4


class CheckFailed(Exception):
    """Raised inside a check when a property does not hold"""


def expect(condition: bool, message: str):
    if not condition:
        raise CheckFailed(message)


@dataclass(frozen=True)
class SelftestConfig:
    max_order: int = 6
    numeric_max_order: int = 10
    seed: int = 20240607
    points: int = 200
    cases: int = 1000

    @classmethod
    def from_settings(cls, **overrides) -> SelftestConfig:
        """Defaults from Django settings; overrides that are None are ignored"""
        from django.conf import settings

        values = {
            "max_order": settings.SELFTEST_MAX_ORDER,
            "numeric_max_order": settings.SELFTEST_NUMERIC_MAX_ORDER,
            "seed": settings.SELFTEST_SEED,
            "points": settings.SELFTEST_RANDOM_POINTS,
            "cases": settings.SELFTEST_RANDOM_CASES,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        config = cls(**values)
        config.validate()
        return config

    def validate(self):
        for item in fields(self):
            if item.name != "seed" and getattr(self, item.name) < 1:
                raise ValueError(f"{item.name} must be at least 1")

    def scaled(self, fraction: float) -> int:
        """A share of the random case budget, at least one case"""
        return max(1, int(self.cases * fraction))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SelftestReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for result in self.results if result.passed)

    @property
    def failed(self) -> int:
        return len(self.results) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def failures(self) -> list[CheckResult]:
        return [result for result in self.results if not result.passed]


Check = Callable[[SelftestConfig, random.Random], str]

CHECKS: dict[str, Check] = {}


def check(name: str):
    """Register a check; it returns a short summary or raises CheckFailed"""

    def decorator(fn: Check) -> Check:
        CHECKS[name] = fn
        return fn

    return decorator


def _orders(top: int) -> range:
    return range(1, top + 1)


# --- ring -----------------------------------------------------------------


@check("ring-axioms")
def check_ring_axioms(config, rng):
    cases = config.scaled(0.5)
    for _ in range(cases):
        p, q, r = (random_polynomial(rng) for _ in range(3))
        expect(p + q == q + p, f"p + q != q + p for p = {p}, q = {q}")
        expect(p * q == q * p, f"pq != qp for p = {p}, q = {q}")
        expect((p + q) + r == p + (q + r), "addition is not associative")
        expect((p * q) * r == p * (q * r), f"multiplication is not associative for {p}, {q}, {r}")
        expect(p * (q + r) == p * q + p * r, f"distributivity fails for {p}, {q}, {r}")
        expect((p - p).is_zero, f"p - p != 0 for p = {p}")
    return f"{cases} triples"


@check("commuting-derivations")
def check_commuting_derivations(config, rng):
    cases = config.scaled(0.5)
    for _ in range(cases):
        p = random_polynomial(rng)
        expect(
            p.derivative(X).derivative(Y) == p.derivative(Y).derivative(X),
            f"∂x∂y != ∂y∂x on {p}",
        )
    return f"{cases} polynomials"


@check("leibniz")
def check_leibniz(config, rng):
    cases = config.scaled(0.5)
    for _ in range(cases):
        p, q = random_polynomial(rng), random_polynomial(rng)
        for direction in (X, Y):
            expected = p.derivative(direction) * q + p * q.derivative(direction)
            expect((p * q).derivative(direction) == expected, f"Leibniz fails for {p}, {q}")
    return f"{cases} pairs"


@check("evaluation-homomorphism")
def check_evaluation(config, rng):
    cases = config.scaled(0.2)
    for _ in range(cases):
        p, q = random_polynomial(rng), random_polynomial(rng)
        point = random_point(p.variables() | q.variables(), rng)
        expect(
            (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point),
            f"evaluation does not respect products for {p}, {q}",
        )
        expect(
            (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point),
            f"evaluation does not respect sums for {p}, {q}",
        )
    return f"{cases} pairs"


# --- operators ------------------------------------------------------------


@check("compose-apply")
def check_compose_apply(config, rng):
    cases = config.scaled(0.05)
    for _ in range(cases):
        P = random_operator(rng, COMPOSE_APPLY_ORDER, max_terms=2)
        Q = random_operator(rng, COMPOSE_APPLY_ORDER, max_terms=2)
        f = random_polynomial(rng)
        expect(
            op_apply(op_compose(P, Q), f) == op_apply(P, op_apply(Q, f)),
            f"(P∘Q)(f) != P(Q(f)) for P = {P}, Q = {Q}, f = {f}",
        )
    return f"{cases} triples"


@check("gauge-homomorphism")
def check_gauge_homomorphism(config, rng):
    alpha = GaugeParameter()
    cases = config.scaled(0.02)
    for _ in range(cases):
        P = random_operator(rng, HOMOMORPHISM_ORDER, density=0.3, max_terms=2)
        Q = random_operator(rng, HOMOMORPHISM_ORDER, density=0.3, max_terms=2)
        expect(
            gauge_conjugate(P @ Q, alpha) == gauge_conjugate(P, alpha) @ gauge_conjugate(Q, alpha),
            f"conjugation is not multiplicative on P = {P}, Q = {Q}",
        )
        expect(gauge_conjugate(P, GaugeParameter.identity()) == P, f"α = 0 moves {P}")
    return f"{cases} pairs"


@check("exponent-additivity")
def check_exponent_additivity(config, rng):
    cases = config.scaled(0.02)
    for _ in range(cases):
        P = random_operator(rng, 3)
        first = random_polynomial(rng, ("u",), max_terms=2)
        second = random_polynomial(rng, ("v",), max_terms=2)
        stepwise = gauge_conjugate(
            gauge_conjugate(P, GaugeParameter.of(first)), GaugeParameter.of(second)
        )
        expect(
            stepwise == gauge_conjugate(P, GaugeParameter.of(first + second)),
            f"conjugating {P} by {first} then {second} differs from their sum",
        )
    return f"{cases} operators"


@check("principal-symbol")
def check_principal_symbol(config, rng):
    alpha = GaugeParameter()
    checked = 0
    for _ in range(config.scaled(0.02)):
        P = random_operator(rng, 5)
        if P.is_zero:
            continue
        expect(
            principal_symbol(gauge_conjugate(P, alpha)) == principal_symbol(P),
            f"conjugation changes the principal symbol of {P}",
        )
        checked += 1
    return f"{checked} operators"


@check("mixed-term-freeness")
def check_mixed_term_freeness(config, rng):
    alpha = GaugeParameter()
    for d in _orders(BELL_CHECK_ORDER):
        conjugated = gauge_conjugate(NormalizedM.generic(d).to_operator(), alpha)
        expect(not conjugated.has_mixed_terms, f"conjugated M of order {d} has mixed terms")
    return f"d = 1..{BELL_CHECK_ORDER}"


@check("conjugation-identity")
def check_conjugation_identity(config, rng):
    alpha = GaugeParameter()
    for i in range(BELL_CHECK_ORDER + 1):
        m_i = var("m")
        for direction, monomial in ((X, LinearDiffOperator.dx(i)), (Y, LinearDiffOperator.dy(i))):
            conjugated = gauge_conjugate(monomial.scale(m_i), alpha)
            for k in range(i + 1):
                key = (k, 0) if direction == X else (0, k)
                expect(
                    conjugated.coefficient(*key)
                    == conjugated_coefficient(m_i, i, k, alpha, direction),
                    f"coefficient of D{direction}^{k} in (m D{direction}^{i})^g disagrees",
                )
    return f"0 <= k <= i <= {BELL_CHECK_ORDER}"


# --- bell -----------------------------------------------------------------


@check("bell-determinant")
def check_bell_determinant(config, rng):
    for n in _orders(BELL_CHECK_ORDER):
        xs = [var(f"x{i}") for i in range(1, n + 1)]
        expect(bell_complete_det(n, xs) == bell_complete(n, xs), f"det form differs at n = {n}")
    return f"n = 1..{BELL_CHECK_ORDER}"


@check("bell-numbers")
def check_bell_numbers(config, rng):
    for n, expected in enumerate(BELL_NUMBERS):
        value = bell_complete(n, [1] * n)
        expect(value.is_constant and value.constant_term == expected, f"B_{n}(1..1) = {value}")
        expect(bell_number(n) == expected, f"{bell_number(n)} set partitions of {n} items")
    return f"n = 0..{len(BELL_NUMBERS) - 1}"


@check("bell-omega-bridge")
def check_bell_omega_bridge(config, rng):
    laplace = LaplaceOperator.generic()
    for w in _orders(BELL_CHECK_ORDER):
        for which, f, direction in (("b", laplace.b, X), ("a", laplace.a, Y)):
            expect(
                bell_complete(w, bell_arguments(f, direction, w)) == p_op(which, w),
                f"B_{w}(-{which}, ...) != P_{w}({which})",
            )
    return f"w = 1..{BELL_CHECK_ORDER}"


# --- invariants -----------------------------------------------------------


@check("p-table")
def check_p_table(config, rng):
    for i, expected in enumerate(p_table()):
        actual = p_op("b", i)
        expect(actual == expected, f"P_{i}(b) = {actual}, expected {expected}")
    return "P_0..P_5"


@check("golden-example")
def check_golden_example(config, rng):
    golden = example_d5()
    for compute in (invariants_bell, invariants_omega):
        differences = golden.expected.differences(compute(golden.laplace, golden.M))
        expect(not differences, f"{compute.__name__} differs in {', '.join(differences)}")
    return "d = 5, both forms"


@check("laplace-invariants")
def check_laplace_invariants(config, rng):
    laplace = LaplaceOperator.generic()
    moved = gauge_action_laplace(laplace, GaugeParameter())
    before, after = laplace_invariants(laplace), laplace_invariants(moved)
    expect(before == after, "h, k or m changes under the gauge action")
    expect(before.m == before.h - before.k, "m != h - k")
    return "h, k, m"


@check("oracle-equivalence")
def check_oracle_equivalence(config, rng):
    laplace = LaplaceOperator.generic()
    top = max(config.max_order, BELL_CHECK_ORDER)
    for d in _orders(top):
        M = NormalizedM.generic(d)
        differences = invariants_bell(laplace, M).differences(invariants_omega(laplace, M))
        expect(not differences, f"Bell and Ω forms differ at d = {d} in {', '.join(differences)}")
    return f"d = 1..{top}"


@check("gauge-invariance")
def check_gauge_invariance(config, rng):
    for d in _orders(config.max_order):
        expect(
            verify_gauge_invariance(LaplaceOperator.generic(), NormalizedM.generic(d)),
            f"an invariant moves under the gauge action at d = {d}",
        )
    return f"d = 1..{config.max_order}"


@check("gauge-invariance-numeric")
def check_gauge_invariance_numeric(config, rng):
    for d in _orders(config.numeric_max_order):
        expect(
            verify_gauge_invariance_numeric(d, rng, config.points),
            f"numeric gauge check fails at d = {d}",
        )
    return f"d = 1..{config.numeric_max_order}, {config.points} points each"


@check("frame-replay")
def check_frame_replay(config, rng):
    laplace = LaplaceOperator.generic()
    for d in _orders(config.max_order):
        M = NormalizedM.generic(d)
        differences = invariants_bell(laplace, M).differences(invariants_frame(laplace, M))
        expect(not differences, f"frame restriction differs at d = {d} in {', '.join(differences)}")
    return f"d = 1..{config.max_order}"


# --- darboux --------------------------------------------------------------


@check("darboux-instances")
def check_darboux_instances(config, rng):
    L = LaplaceOperator.generic().to_operator()
    trivial = DarbouxQuadruple(N=L, L=L, L1=L, M=L)
    expect(darboux_residual(trivial).is_zero, "the trivial quadruple has a residual")
    factorization = factorization_quadruple()
    expect(darboux_residual(factorization).is_zero, "the factorization quadruple has a residual")
    expect(
        verify_gauge_invariance(
            LaplaceOperator.from_operator(factorization.L),
            NormalizedM.from_operator(factorization.M),
        ),
        "invariants of the factorization pair change under the gauge",
    )
    perturbed = DarbouxQuadruple(
        N=factorization.N,
        L=factorization.L + LinearDiffOperator.multiplication(var("b", 0, 1)),
        L1=factorization.L1,
        M=factorization.M,
    )
    expect(not darboux_residual(perturbed).is_zero, "a perturbed quadruple verifies")
    return "trivial, factorization, perturbed"


@check("darboux-covariance")
def check_darboux_covariance(config, rng):
    cases = config.scaled(0.01)
    for _ in range(cases):
        quadruple = random_quadruple(rng)
        expect(
            verify_darboux_gauge_covariance(quadruple, GaugeParameter()),
            f"residual of {quadruple} is not gauge covariant",
        )
    return f"{cases} quadruples"


# --- textio ---------------------------------------------------------------


@check("parser-round-trip")
def check_parser_round_trip(config, rng):
    for _ in range(config.cases):
        P = random_operator(rng, 6, ("a", "b", "c", "m[2]", "m[-1]"), density=0.3)
        text = format_operator(P)
        expect(parse_operator(text) == P, f"{text!r} does not parse back to itself")
    return f"{config.cases} operators"


def run_check(name: str, config: SelftestConfig) -> CheckResult:
    rng = random.Random(f"{config.seed}:{name}")
    try:
        detail = CHECKS[name](config, rng)
    except CheckFailed as exc:
        return CheckResult(name, False, str(exc))
    except KernelError as exc:
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, True, detail)


def run_selftest(config: SelftestConfig, only: Iterable[str] | None = None) -> SelftestReport:
    """Run the registered checks (or the ``only`` subset) in registration order"""
    names = list(CHECKS) if only is None else list(only)
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise ValueError(f"Unknown checks: {', '.join(unknown)}")
    report = SelftestReport()
    for name in names:
        result = run_check(name, config)
        logger.debug("Check %s %s: %s", name, "passed" if result.passed else "failed", result.detail)
        report.results.append(result)
    return report
