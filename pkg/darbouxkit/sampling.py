"""Seeded random inputs for the property suites."""

import random
from fractions import Fraction
from typing import Iterable, Sequence

from .darboux import DarbouxQuadruple
from .operators import LinearDiffOperator
from .ring import DiffPolynomial, JetVariable, Monomial, poly_sum

DEFAULT_SYMBOLS = ("a", "b", "c")


def random_rational(rng: random.Random, bound: int = 5) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_jet(rng: random.Random, symbols: Sequence[str], max_jet_order: int = 2) -> JetVariable:
    nx = rng.randint(0, max_jet_order)
    ny = rng.randint(0, max_jet_order - nx)
    return JetVariable(rng.choice(list(symbols)), nx, ny)


def random_polynomial(
    rng: random.Random,
    symbols: Sequence[str] = DEFAULT_SYMBOLS,
    max_terms: int = 4,
    max_degree: int = 2,
    max_jet_order: int = 2,
) -> DiffPolynomial:
    """A sum of up to ``max_terms`` random terms; may be zero"""
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        exponents: dict[JetVariable, int] = {}
        for _ in range(rng.randint(0, max_degree)):
            jet = random_jet(rng, symbols, max_jet_order)
            exponents[jet] = exponents.get(jet, 0) + 1
        terms.append(DiffPolynomial({Monomial.from_exponents(exponents): random_rational(rng)}))
    return poly_sum(terms)


def random_operator(
    rng: random.Random,
    max_order: int = 2,
    symbols: Sequence[str] = DEFAULT_SYMBOLS,
    density: float = 0.5,
    **polynomial_options,
) -> LinearDiffOperator:
    """Random coefficients on a random subset of the keys (i, j) with i + j <= max_order"""
    coefficients = {}
    for i in range(max_order + 1):
        for j in range(max_order + 1 - i):
            if rng.random() < density:
                coefficients[(i, j)] = random_polynomial(rng, symbols, **polynomial_options)
    return LinearDiffOperator(coefficients)


def random_point(
    variables: Iterable[JetVariable], rng: random.Random, bound: int = 7
) -> dict[JetVariable, Fraction]:
    """A random exact rational value for every variable"""
    return {jet: random_rational(rng, bound) for jet in sorted(variables)}


def random_quadruple(rng: random.Random, max_order: int = 2) -> DarbouxQuadruple:
    """Arbitrary N, M and L, L1 of principal symbol DxDy; not a Darboux pair in general"""

    def laplace_like() -> LinearDiffOperator:
        return LinearDiffOperator.monomial(1, 1) + random_operator(rng, 1)

    return DarbouxQuadruple(
        N=random_operator(rng, max_order),
        L=laplace_like(),
        L1=laplace_like(),
        M=random_operator(rng, max_order),
    )
