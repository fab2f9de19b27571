"""
The noncommutative ring K[Dx, Dy] of linear partial differential operators.

An operator is kept in the normal form sum coeff * Dx^i Dy^j with every
coefficient to the left of its derivative monomial.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping

from .exceptions import (
    GaugeSymbolClash,
    MixedDerivative,
    NotLaplaceOperator,
    OrderMismatch,
    ZeroOperator,
)
from .ring import (
    ONE,
    X,
    Y,
    ZERO,
    DiffPolynomial,
    JetVariable,
    binomial,
    coefficient_symbol,
    poly_sum,
    var,
)

logger = logging.getLogger(__name__)

Key = tuple[int, int]

# order of the zero operator
ZERO_ORDER = float("-inf")


def _canonical_key(key: Key) -> tuple[int, int]:
    # decreasing total order, ties broken by the Dx power descending
    i, j = key
    return (-(i + j), -i)


class LinearDiffOperator:
    """A finite map (i, j) -> coefficient of Dx^i Dy^j; zero coefficients are dropped"""

    __slots__ = ("_coefficients", "_hash")

    def __init__(self, coefficients: Mapping[Key, DiffPolynomial] | None = None):
        cleaned = {}
        for (i, j), coeff in (coefficients or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"Derivative powers must be non-negative, got {(i, j)}")
            coeff = DiffPolynomial.coerce(coeff)
            if coeff:
                cleaned[(i, j)] = coeff
        self._coefficients = cleaned
        self._hash = None

    @classmethod
    def zero(cls) -> LinearDiffOperator:
        return cls()

    @classmethod
    def identity(cls) -> LinearDiffOperator:
        return cls({(0, 0): ONE})

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1) -> LinearDiffOperator:
        return cls({(i, j): coeff})

    @classmethod
    def dx(cls, power: int = 1) -> LinearDiffOperator:
        return cls.monomial(power, 0)

    @classmethod
    def dy(cls, power: int = 1) -> LinearDiffOperator:
        return cls.monomial(0, power)

    @classmethod
    def multiplication(cls, f) -> LinearDiffOperator:
        """The operator of multiplication by ``f``"""
        return cls({(0, 0): f})

    def coefficient(self, i: int, j: int) -> DiffPolynomial:
        return self._coefficients.get((i, j), ZERO)

    def items(self) -> list[tuple[Key, DiffPolynomial]]:
        """Stored terms in canonical order"""
        return sorted(self._coefficients.items(), key=lambda item: _canonical_key(item[0]))

    def keys(self) -> list[Key]:
        return [key for key, _ in self.items()]

    def as_dict(self) -> dict[Key, DiffPolynomial]:
        return dict(self._coefficients)

    @property
    def order(self):
        return max((i + j for i, j in self._coefficients), default=ZERO_ORDER)

    @property
    def is_zero(self) -> bool:
        return not self._coefficients

    @property
    def has_mixed_terms(self) -> bool:
        return any(i > 0 and j > 0 for i, j in self._coefficients)

    def symbols(self) -> frozenset[str]:
        return frozenset().union(*(c.symbols() for c in self._coefficients.values()))

    def __bool__(self):
        return bool(self._coefficients)

    def __eq__(self, other):
        if not isinstance(other, LinearDiffOperator):
            return NotImplemented
        return self._coefficients == other._coefficients

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._coefficients.items()))
        return self._hash

    def __repr__(self):
        return f"LinearDiffOperator({str(self)!r})"

    def __str__(self):
        from .textio import format_operator

        return format_operator(self)

    def __add__(self, other: LinearDiffOperator) -> LinearDiffOperator:
        if not isinstance(other, LinearDiffOperator):
            return NotImplemented
        merged = dict(self._coefficients)
        for key, coeff in other._coefficients.items():
            merged[key] = merged.get(key, ZERO) + coeff
        return LinearDiffOperator(merged)

    def __neg__(self) -> LinearDiffOperator:
        return LinearDiffOperator({key: -c for key, c in self._coefficients.items()})

    def __sub__(self, other: LinearDiffOperator) -> LinearDiffOperator:
        if not isinstance(other, LinearDiffOperator):
            return NotImplemented
        return self + (-other)

    def scale(self, f) -> LinearDiffOperator:
        """Left multiplication f ∘ P (coefficients are multiplied by f)"""
        f = DiffPolynomial.coerce(f)
        return LinearDiffOperator({key: f * c for key, c in self._coefficients.items()})

    def map_coefficients(self, fn) -> LinearDiffOperator:
        return LinearDiffOperator({key: fn(c) for key, c in self._coefficients.items()})

    def __matmul__(self, other: LinearDiffOperator) -> LinearDiffOperator:
        if not isinstance(other, LinearDiffOperator):
            return NotImplemented
        return op_compose(self, other)

    def compose(self, other: LinearDiffOperator) -> LinearDiffOperator:
        return op_compose(self, other)

    def apply(self, f) -> DiffPolynomial:
        return op_apply(self, f)

    def conjugate(self, alpha: GaugeParameter) -> LinearDiffOperator:
        return gauge_conjugate(self, alpha)

    def principal_symbol(self) -> dict[Key, DiffPolynomial]:
        return principal_symbol(self)


class _JetTable:
    """Lazily computed ∂x^s ∂y^t of one polynomial"""

    def __init__(self, poly: DiffPolynomial):
        self._table = {(0, 0): poly}

    def __getitem__(self, key: Key) -> DiffPolynomial:
        if key not in self._table:
            s, t = key
            if t > 0:
                self._table[key] = self[(s, t - 1)].derivative(Y)
            else:
                self._table[key] = self[(s - 1, t)].derivative(X)
        return self._table[key]


def op_compose(P: LinearDiffOperator, Q: LinearDiffOperator) -> LinearDiffOperator:
    """
    P ∘ Q in normal form

    Moves each Dx^i Dy^j of P past the coefficients of Q with the general
    Leibniz rule: Dx^i Dy^j q = sum C(i,s) C(j,t) ∂x^s ∂y^t(q) Dx^(i-s) Dy^(j-t).
    """
    if P.is_zero or Q.is_zero:
        return LinearDiffOperator.zero()
    tables = {key: _JetTable(q) for key, q in Q.as_dict().items()}
    parts: dict[Key, list[DiffPolynomial]] = defaultdict(list)
    for (i, j), p in P.as_dict().items():
        for (k, l), q in Q.as_dict().items():
            table = tables[(k, l)]
            for s in range(i + 1):
                for t in range(j + 1):
                    dq = table[(s, t)]
                    if dq.is_zero:
                        continue
                    weight = binomial(i, s) * binomial(j, t)
                    parts[(i - s + k, j - t + l)].append(p * dq * weight)
    return LinearDiffOperator({key: poly_sum(terms) for key, terms in parts.items()})


def op_apply(P: LinearDiffOperator, f) -> DiffPolynomial:
    """P(f): sum of coeff * ∂x^i ∂y^j (f)"""
    table = _JetTable(DiffPolynomial.coerce(f))
    return poly_sum(coeff * table[key] for key, coeff in P.as_dict().items())


@dataclass(frozen=True)
class GaugeParameter:
    """
    The exponent α of a gauge transformation g = exp(α)

    With ``value`` unset, α is a symbolic function whose jets are the jet
    variables of ``symbol``. With ``value`` set, α is that differential
    polynomial and its jets are total derivatives of it.
    """

    symbol: str = "alpha"
    value: DiffPolynomial | None = None

    @classmethod
    def of(cls, value, symbol: str = "alpha") -> GaugeParameter:
        return cls(symbol=symbol, value=DiffPolynomial.coerce(value))

    @classmethod
    def identity(cls) -> GaugeParameter:
        return cls(value=ZERO)

    @property
    def is_symbolic(self) -> bool:
        return self.value is None

    def jet_variable(self, nx: int, ny: int) -> JetVariable:
        return JetVariable(self.symbol, nx, ny)

    def derivative(self, nx: int = 0, ny: int = 0) -> DiffPolynomial:
        if self.value is None:
            return var(self.symbol, nx, ny)
        return self.value.derivative_many(nx, ny)

    def ensure_free_of(self, *operands) -> GaugeParameter:
        """Raise GaugeSymbolClash if a symbolic α names a coefficient function of ``operands``"""
        if self.is_symbolic:
            for operand in operands:
                if self.symbol in operand.symbols():
                    raise GaugeSymbolClash(self.symbol)
        return self


def _shifted_powers(shift: LinearDiffOperator, count: int) -> list[LinearDiffOperator]:
    powers = [LinearDiffOperator.identity()]
    for _ in range(count):
        powers.append(op_compose(powers[-1], shift))
    return powers


def gauge_conjugate(P: LinearDiffOperator, alpha: GaugeParameter) -> LinearDiffOperator:
    """
    exp(-α) ∘ P ∘ exp(α)

    Computed by the substitution Dx -> Dx + α_x, Dy -> Dy + α_y on each
    monomial Dx^i Dy^j, coefficients unchanged.
    """
    if P.is_zero:
        return P
    top_x = max(i for i, _ in P.as_dict())
    top_y = max(j for _, j in P.as_dict())
    powers_x = _shifted_powers(
        LinearDiffOperator.dx() + LinearDiffOperator.multiplication(alpha.derivative(1, 0)),
        top_x,
    )
    powers_y = _shifted_powers(
        LinearDiffOperator.dy() + LinearDiffOperator.multiplication(alpha.derivative(0, 1)),
        top_y,
    )
    result = LinearDiffOperator.zero()
    for (i, j), coeff in P.as_dict().items():
        shifted = powers_x[i] if j == 0 else op_compose(powers_x[i], powers_y[j])
        result = result + shifted.scale(coeff)
    logger.debug("Conjugated an operator of order %s into %d terms", P.order, len(result.keys()))
    return result


def principal_symbol(P: LinearDiffOperator) -> dict[Key, DiffPolynomial]:
    """The coefficients of P of highest total order"""
    if P.is_zero:
        raise ZeroOperator("The zero operator has no principal symbol")
    top = P.order
    return {key: c for key, c in P.items() if sum(key) == top}


@dataclass(frozen=True)
class LaplaceOperator:
    """L = Dx Dy + a Dx + b Dy + c"""

    a: DiffPolynomial
    b: DiffPolynomial
    c: DiffPolynomial

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, DiffPolynomial.coerce(getattr(self, name)))

    @classmethod
    def generic(cls) -> LaplaceOperator:
        return cls(var("a"), var("b"), var("c"))

    @classmethod
    def from_operator(cls, P: LinearDiffOperator) -> LaplaceOperator:
        allowed = {(1, 1), (1, 0), (0, 1), (0, 0)}
        if set(P.as_dict()) - allowed or P.coefficient(1, 1) != ONE:
            raise NotLaplaceOperator(f"{P} is not of the form Dx*Dy + a*Dx + b*Dy + c")
        return cls(P.coefficient(1, 0), P.coefficient(0, 1), P.coefficient(0, 0))

    def to_operator(self) -> LinearDiffOperator:
        return LinearDiffOperator(
            {(1, 1): ONE, (1, 0): self.a, (0, 1): self.b, (0, 0): self.c}
        )

    def symbols(self) -> frozenset[str]:
        return self.a.symbols() | self.b.symbols() | self.c.symbols()


def gauge_action_laplace(Lc: LaplaceOperator, alpha: GaugeParameter) -> LaplaceOperator:
    """(a, b, c) -> (a + α_y, b + α_x, c + a α_x + b α_y + α_xy + α_x α_y)"""
    alpha_x = alpha.derivative(1, 0)
    alpha_y = alpha.derivative(0, 1)
    return LaplaceOperator(
        Lc.a + alpha_y,
        Lc.b + alpha_x,
        Lc.c + Lc.a * alpha_x + Lc.b * alpha_y + alpha.derivative(1, 1) + alpha_x * alpha_y,
    )


@dataclass(frozen=True)
class NormalizedM:
    """
    M = sum_{i=1..d} (m_i Dx^i + m_{-i} Dy^i) + m_0, free of mixed derivatives

    ``coefficients`` holds m_{-d}, ..., m_d in that order.
    """

    d: int
    coefficients: tuple[DiffPolynomial, ...] = field(default=())

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"Normalized M needs order d >= 1, got {self.d}")
        coefficients = tuple(DiffPolynomial.coerce(c) for c in self.coefficients)
        if not coefficients:
            coefficients = (ZERO,) * (2 * self.d + 1)
        if len(coefficients) != 2 * self.d + 1:
            raise ValueError(f"Normalized M of order {self.d} needs {2 * self.d + 1} coefficients")
        object.__setattr__(self, "coefficients", coefficients)

    @classmethod
    def generic(cls, d: int, with_free_term: bool = True, base: str = "m") -> NormalizedM:
        """M with symbolic coefficients m[-d], ..., m[d]"""
        coefficients = [var(coefficient_symbol(i, base)) for i in range(-d, d + 1)]
        if not with_free_term:
            coefficients[d] = ZERO
        return cls(d, tuple(coefficients))

    @classmethod
    def from_mapping(cls, d: int, mapping: Mapping[int, DiffPolynomial]) -> NormalizedM:
        return cls(d, tuple(mapping.get(i, ZERO) for i in range(-d, d + 1)))

    @classmethod
    def from_operator(
        cls, P: LinearDiffOperator, order: int | None = None, base: str = "m"
    ) -> NormalizedM:
        """
        View a mixed-free operator as normalized M

        Without ``order`` the order is the largest of the Dx/Dy powers and the
        indices |i| of the symbols m[i] in the coefficients (at least 1).
        Other indexed families, such as n[9], do not count.
        A larger explicit ``order`` zero-pads the missing m_i.
        """
        if P.has_mixed_terms:
            raise MixedDerivative(f"{P} contains mixed derivatives")
        powers = max((i + j for i, j in P.as_dict()), default=0)
        if order is None:
            indices = [
                abs(jet.index)
                for coeff in P.as_dict().values()
                for jet in coeff.variables()
                if jet.index is not None and jet.base == base
            ]
            order = max([powers, 1, *indices])
        elif order < powers:
            raise OrderMismatch(f"Order {order} is below the order {powers} of {P}")
        mapping = {}
        for (i, j), coeff in P.as_dict().items():
            mapping[i if j == 0 else -j] = coeff
        return cls.from_mapping(order, mapping)

    def coefficient(self, index: int) -> DiffPolynomial:
        if abs(index) > self.d:
            return ZERO
        return self.coefficients[index + self.d]

    def as_dict(self) -> dict[int, DiffPolynomial]:
        return {i: self.coefficient(i) for i in range(-self.d, self.d + 1)}

    def symbols(self) -> frozenset[str]:
        return frozenset().union(*(c.symbols() for c in self.coefficients))

    def to_operator(self) -> LinearDiffOperator:
        mapping = {(0, 0): self.coefficient(0)}
        for i in range(1, self.d + 1):
            mapping[(i, 0)] = self.coefficient(i)
            mapping[(0, i)] = self.coefficient(-i)
        return LinearDiffOperator(mapping)


def gauge_conjugate_M(M: NormalizedM, alpha: GaugeParameter) -> NormalizedM:
    """
    M^exp(α), term by term

    Powers of Dx + α_x contain only powers of Dx (and likewise in y), so the
    conjugate is again mixed-free and re-wraps as a NormalizedM of the same d.
    """
    conjugated = gauge_conjugate(M.to_operator(), alpha)
    return NormalizedM.from_operator(conjugated, order=M.d)
