"""
Joint gauge invariants of the pair (L, M).

Two independent routes produce the same 2d+3 generating invariants: the
complete-Bell form (``invariants_bell``) and the Ω/P_i form
(``invariants_omega``). ``invariants_frame`` recovers them a third way, by
restricting the conjugated coefficients of M to the moving frame
α_x = -b, α_y = -a (and their x resp. y derivatives).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping, NamedTuple

from .bell import bell_arguments, bell_complete
from .exceptions import MixedAlphaJet, UnnormalizedAlphaJet
from .operators import (
    GaugeParameter,
    LaplaceOperator,
    NormalizedM,
    gauge_action_laplace,
    gauge_conjugate_M,
)
from .ring import (
    ONE,
    X,
    Y,
    DiffPolynomial,
    JetVariable,
    binomial,
    check_direction,
    coefficient_symbol,
    poly_sum,
)
from .sampling import random_point
from .textio import format_polynomial

logger = logging.getLogger(__name__)


class LaplaceInvariants(NamedTuple):
    h: DiffPolynomial
    k: DiffPolynomial
    m: DiffPolynomial


class OmegaMode(str, Enum):
    """Ω = Dx - b (x-with-b) or Ω = Dy - a (y-with-a)"""

    X_WITH_B = "x-with-b"
    Y_WITH_A = "y-with-a"


@dataclass(frozen=True)
class InvariantSet:
    """m, h and R_{-d}, ..., R_d for a pair (L, M) of order d"""

    d: int
    m: DiffPolynomial
    h: DiffPolynomial
    R: Mapping[int, DiffPolynomial] = field(default_factory=dict)

    @staticmethod
    def index_order(d: int) -> list[int]:
        """R indices in the order R_1..R_d, R_-d..R_-1, R_0"""
        return [*range(1, d + 1), *range(-d, 0), 0]

    def entries(self) -> list[tuple[str, DiffPolynomial]]:
        rows = [("m", self.m), ("h", self.h)]
        rows.extend((f"R[{j}]", self.R[j]) for j in self.index_order(self.d))
        return rows

    def __len__(self):
        return 2 + len(self.R)

    def differences(self, other: InvariantSet) -> dict[str, DiffPolynomial]:
        """Nonzero entry-wise differences other - self"""
        theirs = dict(other.entries())
        return {
            name: theirs[name] - poly
            for name, poly in self.entries()
            if theirs.get(name) != poly
        }

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "m": format_polynomial(self.m),
            "h": format_polynomial(self.h),
            "R": {str(j): format_polynomial(self.R[j]) for j in range(-self.d, self.d + 1)},
        }


def laplace_invariants(Lc: LaplaceOperator) -> LaplaceInvariants:
    """h = a_x + ab - c, k = b_y + ab - c and m = a_x - b_y = h - k"""
    ab_minus_c = Lc.a * Lc.b - Lc.c
    a_x = Lc.a.derivative(X)
    b_y = Lc.b.derivative(Y)
    return LaplaceInvariants(h=a_x + ab_minus_c, k=b_y + ab_minus_c, m=a_x - b_y)


@dataclass(frozen=True)
class FrameSubstitution:
    """
    The moving frame ∂x^k α -> -∂x^(k-1) b, ∂y^k α -> -∂y^(k-1) a for 1 <= k <= max_order

    Mixed jets of α are never bound.
    """

    max_order: int
    laplace: LaplaceOperator = field(default_factory=LaplaceOperator.generic)
    alpha: GaugeParameter = field(default_factory=GaugeParameter)

    def bindings(self) -> dict[JetVariable, DiffPolynomial]:
        if not self.alpha.is_symbolic:
            raise ValueError("The frame normalizes a symbolic gauge exponent only")
        bindings = {}
        b_jet, a_jet = self.laplace.b, self.laplace.a
        for k in range(1, self.max_order + 1):
            bindings[self.alpha.jet_variable(k, 0)] = -b_jet
            bindings[self.alpha.jet_variable(0, k)] = -a_jet
            b_jet, a_jet = b_jet.derivative(X), a_jet.derivative(Y)
        return bindings


def frame_restrict(
    p: DiffPolynomial,
    max_order: int | None = None,
    laplace: LaplaceOperator | None = None,
    alpha: GaugeParameter | None = None,
) -> DiffPolynomial:
    """
    Restrict ``p`` to the moving frame

    The frame order is the highest α jet in ``p``; a larger ``max_order``
    only adds unused bindings. Raises MixedAlphaJet for a mixed jet and
    UnnormalizedAlphaJet for the underived α; the frame fixes neither.
    """
    alpha = alpha or GaugeParameter()
    alpha_jets = [jet for jet in p.variables() if jet.symbol == alpha.symbol]
    for jet in alpha_jets:
        if jet.is_mixed:
            raise MixedAlphaJet(jet)
        if jet.order == 0:
            raise UnnormalizedAlphaJet(jet)
    needed = max((jet.order for jet in alpha_jets), default=0)
    frame = FrameSubstitution(
        max(needed, max_order or 0), laplace or LaplaceOperator.generic(), alpha
    )
    return p.substitute(frame.bindings())


def invariants_bell(Lc: LaplaceOperator, M: NormalizedM) -> InvariantSet:
    """
    The generating set through complete Bell polynomials

    R_j = sum_{w=j}^d m_w C(w, j) B_{w-j}(-b, -b_x, ..., -∂x^(w-j-1) b),
    R_-j likewise with a and y-derivatives, and
    R_0 = m_0 + sum_w m_w B_w(-b, ...) + m_-w B_w(-a, ...).
    """
    d = M.d
    laplace = laplace_invariants(Lc)
    args_b = bell_arguments(Lc.b, X, d)
    args_a = bell_arguments(Lc.a, Y, d)
    complete_b = [bell_complete(n, args_b) for n in range(d + 1)]
    complete_a = [bell_complete(n, args_a) for n in range(d + 1)]

    R = {}
    for j in range(1, d + 1):
        R[j] = poly_sum(
            M.coefficient(w) * complete_b[w - j] * binomial(w, j) for w in range(j, d + 1)
        )
        R[-j] = poly_sum(
            M.coefficient(-w) * complete_a[w - j] * binomial(w, j) for w in range(j, d + 1)
        )
    R[0] = M.coefficient(0) + poly_sum(
        M.coefficient(w) * complete_b[w] + M.coefficient(-w) * complete_a[w]
        for w in range(1, d + 1)
    )
    logger.debug("Computed Bell-form invariants for d=%d", d)
    return InvariantSet(d=d, m=laplace.m, h=laplace.h, R=R)


def omega_power(
    f: DiffPolynomial,
    mode: OmegaMode | str,
    i: int,
    laplace: LaplaceOperator | None = None,
) -> DiffPolynomial:
    """Ω^i(f) with Ω(g) = ∂x g - b g (x-with-b) or ∂y g - a g (y-with-a)"""
    if i < 0:
        raise ValueError("Ω is only iterated a non-negative number of times")
    mode = OmegaMode(mode)
    laplace = laplace or LaplaceOperator.generic()
    if mode is OmegaMode.X_WITH_B:
        direction, weight = X, laplace.b
    else:
        direction, weight = Y, laplace.a
    g = DiffPolynomial.coerce(f)
    for _ in range(i):
        g = g.derivative(direction) - weight * g
    return g


def p_op(which: str, i: int, laplace: LaplaceOperator | None = None) -> DiffPolynomial:
    """
    P_0(f) = 1 and P_i(f) = -Ω^(i-1)(f) for f = b (x-mode) or f = a (y-mode)

    With this indexing P_1 = -f, P_2 = -f_x + f^2, P_3 = -f_xx + 3 f f_x - f^3.
    """
    laplace = laplace or LaplaceOperator.generic()
    if which == "b":
        f, mode = laplace.b, OmegaMode.X_WITH_B
    elif which == "a":
        f, mode = laplace.a, OmegaMode.Y_WITH_A
    else:
        raise ValueError(f"P_i is defined for f = a or f = b, not {which!r}")
    if i == 0:
        return ONE
    return -omega_power(f, mode, i - 1, laplace)


def invariants_omega(Lc: LaplaceOperator, M: NormalizedM) -> InvariantSet:
    """The generating set through P_i: R_j = sum_{i=0}^{d-j} C(j+i, j) m_{i+j} P_i(b)"""
    d = M.d
    laplace = laplace_invariants(Lc)
    p_b = [p_op("b", i, Lc) for i in range(d + 1)]
    p_a = [p_op("a", i, Lc) for i in range(d + 1)]

    R = {}
    for j in range(1, d + 1):
        R[j] = poly_sum(
            M.coefficient(i + j) * p_b[i] * binomial(j + i, j) for i in range(d - j + 1)
        )
        R[-j] = poly_sum(
            M.coefficient(-(i + j)) * p_a[i] * binomial(j + i, j) for i in range(d - j + 1)
        )
    R[0] = M.coefficient(0) + poly_sum(
        M.coefficient(i) * p_b[i] + M.coefficient(-i) * p_a[i] for i in range(1, d + 1)
    )
    logger.debug("Computed Ω-form invariants for d=%d", d)
    return InvariantSet(d=d, m=laplace.m, h=laplace.h, R=R)


def alpha_arguments(alpha: GaugeParameter, direction: str, count: int) -> list[DiffPolynomial]:
    """(∂α, ∂^2 α, ..., ∂^count α) in ``direction``"""
    if check_direction(direction) == X:
        return [alpha.derivative(n, 0) for n in range(1, count + 1)]
    return [alpha.derivative(0, n) for n in range(1, count + 1)]


def conjugated_coefficient(
    m_i: DiffPolynomial, i: int, k: int, alpha: GaugeParameter, direction: str = X
) -> DiffPolynomial:
    """Coefficient at D^k of (m_i D^i)^exp(α): m_i C(i, k) B_{i-k}(∂α, ..., ∂^(i-k) α)"""
    bell = bell_complete(i - k, alpha_arguments(alpha, direction, i - k))
    return DiffPolynomial.coerce(m_i) * bell * binomial(i, k)


def bell_conjugate_M(M: NormalizedM, alpha: GaugeParameter) -> NormalizedM:
    """M^exp(α) from the closed Bell-polynomial form of each conjugated term"""
    d = M.d
    mapping = {}
    for k in range(1, d + 1):
        mapping[k] = poly_sum(
            conjugated_coefficient(M.coefficient(i), i, k, alpha, X) for i in range(k, d + 1)
        )
        mapping[-k] = poly_sum(
            conjugated_coefficient(M.coefficient(-i), i, k, alpha, Y) for i in range(k, d + 1)
        )
    mapping[0] = M.coefficient(0) + poly_sum(
        conjugated_coefficient(M.coefficient(i), i, 0, alpha, X)
        + conjugated_coefficient(M.coefficient(-i), i, 0, alpha, Y)
        for i in range(1, d + 1)
    )
    return NormalizedM.from_mapping(d, mapping)


def invariants_frame(
    Lc: LaplaceOperator, M: NormalizedM, alpha: GaugeParameter | None = None
) -> InvariantSet:
    """R_j as the conjugated coefficients of M restricted to the moving frame"""
    alpha = (alpha or GaugeParameter()).ensure_free_of(Lc, M)
    conjugated = gauge_conjugate_M(M, alpha)
    laplace = laplace_invariants(Lc)
    R = {
        j: frame_restrict(conjugated.coefficient(j), laplace=Lc, alpha=alpha)
        for j in range(-M.d, M.d + 1)
    }
    return InvariantSet(d=M.d, m=laplace.m, h=laplace.h, R=R)


InvariantMethod = Callable[[LaplaceOperator, NormalizedM], InvariantSet]

INVARIANT_METHODS: dict[str, InvariantMethod] = {
    "bell": invariants_bell,
    "omega": invariants_omega,
}


def _resolve(method: str | InvariantMethod) -> InvariantMethod:
    if callable(method):
        return method
    try:
        return INVARIANT_METHODS[method]
    except KeyError:
        raise ValueError(f"Unknown invariant method {method!r}") from None


def verify_gauge_invariance(
    Lc: LaplaceOperator,
    M: NormalizedM,
    alpha: GaugeParameter | None = None,
    method: str | InvariantMethod = "bell",
) -> bool:
    """True iff every invariant of (L^g, M^g) equals the same invariant of (L, M)"""
    alpha = (alpha or GaugeParameter()).ensure_free_of(Lc, M)
    compute = _resolve(method)
    before = compute(Lc, M)
    after = compute(gauge_action_laplace(Lc, alpha), gauge_conjugate_M(M, alpha))
    differences = before.differences(after)
    if differences:
        logger.info("Gauge invariance fails for %s", ", ".join(sorted(differences)))
    return not differences


def verify_gauge_invariance_numeric(
    d: int,
    rng: random.Random,
    points: int = 200,
    method: str | InvariantMethod = "bell",
) -> bool:
    """
    Randomized exact check of gauge invariance for the generic pair of order d

    Each invariant is evaluated at a random rational jet point and at the
    image of that point under the prolonged gauge action; the values must be
    equal. Only the invariants themselves are expanded symbolically.
    """
    Lc = LaplaceOperator.generic()
    M = NormalizedM.generic(d)
    alpha = GaugeParameter()
    invariants = _resolve(method)(Lc, M)

    moved_L = gauge_action_laplace(Lc, alpha)
    moved_M = gauge_conjugate_M(M, alpha)
    images = {"a": moved_L.a, "b": moved_L.b, "c": moved_L.c}
    images.update({coefficient_symbol(i): moved_M.coefficient(i) for i in range(-d, d + 1)})

    needed = frozenset().union(*(poly.variables() for _, poly in invariants.entries()))
    jet_images = {
        jet: images[jet.symbol].derivative_many(jet.nx, jet.ny) for jet in needed
    }
    base = needed | frozenset().union(*(image.variables() for image in jet_images.values()))

    for _ in range(points):
        point = random_point(base, rng)
        moved = {jet: image.evaluate(point) for jet, image in jet_images.items()}
        for name, poly in invariants.entries():
            if poly.evaluate(point) != poly.evaluate(moved):
                logger.info("Numeric gauge check failed for %s at d=%d", name, d)
                return False
    return True
