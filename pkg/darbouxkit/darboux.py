"""Verification of Darboux intertwining relations N∘L = L1∘M."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .exceptions import PrincipalSymbolMismatch
from .operators import (
    GaugeParameter,
    LinearDiffOperator,
    gauge_conjugate,
    principal_symbol,
)
from .ring import ONE, DiffPolynomial

logger = logging.getLogger(__name__)

LAPLACE_SYMBOL = {(1, 1): ONE}


@dataclass(frozen=True)
class DarbouxQuadruple:
    """Operators N, L, L1, M; L and L1 must both have principal symbol DxDy"""

    N: LinearDiffOperator
    L: LinearDiffOperator
    L1: LinearDiffOperator
    M: LinearDiffOperator

    def __post_init__(self):
        for name in ("L", "L1"):
            operator = getattr(self, name)
            if operator.is_zero or principal_symbol(operator) != LAPLACE_SYMBOL:
                raise PrincipalSymbolMismatch(
                    f"{name} = {operator} does not have principal symbol Dx*Dy"
                )

    def conjugate(self, alpha: GaugeParameter) -> DarbouxQuadruple:
        return conjugate_quadruple(self, alpha)


def darboux_residual(q: DarbouxQuadruple) -> LinearDiffOperator:
    """N∘L - L1∘M; zero exactly when the quadruple is a Darboux transformation"""
    return q.N @ q.L - q.L1 @ q.M


def is_darboux(q: DarbouxQuadruple) -> bool:
    return darboux_residual(q).is_zero


def transformation_order(q: DarbouxQuadruple) -> int | None:
    """The order of a Darboux transformation is the order of its M; None for M = 0"""
    return None if q.M.is_zero else q.M.order


def conjugate_quadruple(q: DarbouxQuadruple, alpha: GaugeParameter) -> DarbouxQuadruple:
    return DarbouxQuadruple(
        N=gauge_conjugate(q.N, alpha),
        L=gauge_conjugate(q.L, alpha),
        L1=gauge_conjugate(q.L1, alpha),
        M=gauge_conjugate(q.M, alpha),
    )


def verify_darboux_gauge_covariance(q: DarbouxQuadruple, alpha: GaugeParameter) -> bool:
    """True iff (N∘L - L1∘M)^g = N^g∘L^g - L1^g∘M^g"""
    alpha.ensure_free_of(q.N, q.L, q.L1, q.M)
    conjugated_residual = gauge_conjugate(darboux_residual(q), alpha)
    residual_of_conjugates = darboux_residual(conjugate_quadruple(q, alpha))
    if conjugated_residual != residual_of_conjugates:
        logger.info("Residual is not gauge covariant: %s", conjugated_residual - residual_of_conjugates)
        return False
    return True


def factorization_quadruple(a="a", b="b") -> DarbouxQuadruple:
    """
    The Darboux transformation carried by the factorization L = (Dx + b)(Dy + a)

    With N = M = Dy + a and L1 = (Dy + a)(Dx + b), both sides equal
    (Dy + a)(Dx + b)(Dy + a). Here L has h = 0, i.e. c = ab + a_x.
    """
    a = DiffPolynomial.variable(a) if isinstance(a, str) else DiffPolynomial.coerce(a)
    b = DiffPolynomial.variable(b) if isinstance(b, str) else DiffPolynomial.coerce(b)
    first = LinearDiffOperator.dy() + LinearDiffOperator.multiplication(a)
    second = LinearDiffOperator.dx() + LinearDiffOperator.multiplication(b)
    return DarbouxQuadruple(N=first, L=second @ first, L1=first @ second, M=first)
