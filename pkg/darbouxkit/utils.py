"""Text-in, objects-out helpers shared by the management commands and the JSON views."""

from .darboux import DarbouxQuadruple, darboux_residual, transformation_order
from .exceptions import OrderMismatch
from .invariants import INVARIANT_METHODS, InvariantSet
from .operators import LaplaceOperator, NormalizedM
from .textio import format_operator, parse_operator

METHOD_CHOICES = (*INVARIANT_METHODS, "both")


def parse_pair(L_text, M_text, order=None):
    """
    Parse the pair (L, M)

    Args:
        L_text: an operator of the form Dx*Dy + a*Dx + b*Dy + c
        M_text: a mixed-free operator
        order: explicit d; zero-pads the missing m_i

    Returns:
        (LaplaceOperator, NormalizedM)
    """
    if order is not None and order < 1:
        raise OrderMismatch(f"Order must be at least 1, got {order}")
    laplace = LaplaceOperator.from_operator(parse_operator(L_text))
    M = NormalizedM.from_operator(parse_operator(M_text), order)
    return laplace, M


def compute_invariants(laplace, M, method="bell"):
    """
    The invariant set by ``method``; with "both" also whether the two forms agree

    Returns:
        (InvariantSet, bool or None)
    """
    if method not in METHOD_CHOICES:
        raise ValueError(f"Unknown invariant method {method!r}")
    if method != "both":
        return INVARIANT_METHODS[method](laplace, M), None
    bell = INVARIANT_METHODS["bell"](laplace, M)
    omega = INVARIANT_METHODS["omega"](laplace, M)
    return bell, not bell.differences(omega)


def invariants_payload(invariants: InvariantSet, agree=None) -> dict:
    payload = invariants.to_dict()
    if agree is not None:
        payload["methods_agree"] = agree
    return payload


def parse_quadruple(N_text, L_text, L1_text, M_text) -> DarbouxQuadruple:
    return DarbouxQuadruple(
        N=parse_operator(N_text),
        L=parse_operator(L_text),
        L1=parse_operator(L1_text),
        M=parse_operator(M_text),
    )


def darboux_payload(quadruple: DarbouxQuadruple) -> dict:
    residual = darboux_residual(quadruple)
    return {
        "residual": format_operator(residual),
        "is_darboux": residual.is_zero,
        "order": transformation_order(quadruple),
    }
