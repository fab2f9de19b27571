"""
Sparse differential polynomials in jet variables over exact rationals.

A jet variable such as ``a_xxy`` stands for a derivative of a coefficient
function. Jets of one symbol are independent indeterminates; they are tied
together only through :func:`total_derivative`.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, total_ordering
from typing import Iterable, Mapping, Union

from .exceptions import UnboundJet

logger = logging.getLogger(__name__)

X = "x"
Y = "y"
DIRECTIONS = (X, Y)

Scalar = Union[int, Fraction]

_INDEXED_SYMBOL = re.compile(r"^(?P<base>[A-Za-z][A-Za-z0-9]*)\[(?P<index>-?\d+)\]$")

# sorts after every jet variable key
_END_OF_MONOMIAL = (2,)


def coefficient_symbol(index: int, base: str = "m") -> str:
    """Name of the coefficient of M at index ``index``, e.g. ``m[-3]``"""
    return f"{base}[{index}]"


@lru_cache(maxsize=None)
def pascal_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    previous = pascal_row(n - 1)
    return (1,) + tuple(previous[k - 1] + previous[k] for k in range(1, n)) + (1,)


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k); zero outside 0 <= k <= n"""
    if n < 0 or k < 0 or k > n:
        return 0
    return pascal_row(n)[k]


def check_direction(direction: str) -> str:
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be 'x' or 'y', got {direction!r}")
    return direction


@total_ordering
@dataclass(frozen=True)
class JetVariable:
    """The derivative ∂x^nx ∂y^ny of the function named ``symbol``"""

    symbol: str
    nx: int = 0
    ny: int = 0

    def __post_init__(self):
        if not self.symbol:
            raise ValueError("A jet variable needs a non-empty symbol")
        if self.nx < 0 or self.ny < 0:
            raise ValueError(f"Negative derivative count in jet of {self.symbol}")

    @cached_property
    def sort_key(self) -> tuple:
        # indexed families (m[-d] .. m[d]) first, by index; then plain names
        match = _INDEXED_SYMBOL.match(self.symbol)
        if match:
            return (0, match["base"], int(match["index"]), self.nx, self.ny)
        return (1, self.symbol, 0, self.nx, self.ny)

    def __lt__(self, other):
        if not isinstance(other, JetVariable):
            return NotImplemented
        return self.sort_key < other.sort_key

    @property
    def index(self) -> int | None:
        match = _INDEXED_SYMBOL.match(self.symbol)
        return int(match["index"]) if match else None

    @property
    def base(self) -> str:
        """``m`` for ``m[3]``; the symbol itself when it carries no index"""
        match = _INDEXED_SYMBOL.match(self.symbol)
        return match["base"] if match else self.symbol

    @property
    def is_mixed(self) -> bool:
        return self.nx > 0 and self.ny > 0

    @property
    def order(self) -> int:
        return self.nx + self.ny

    def derive(self, direction: str, times: int = 1) -> JetVariable:
        if check_direction(direction) == X:
            return JetVariable(self.symbol, self.nx + times, self.ny)
        return JetVariable(self.symbol, self.nx, self.ny + times)

    def __str__(self):
        if not self.nx and not self.ny:
            return self.symbol
        return f"{self.symbol}_{'x' * self.nx}{'y' * self.ny}"


@dataclass(frozen=True)
class Monomial:
    """A product of jet variables; ``powers`` is sorted and has no zero exponents"""

    powers: tuple[tuple[JetVariable, int], ...] = ()

    @classmethod
    def from_exponents(cls, exponents: Mapping[JetVariable, int]) -> Monomial:
        items = [(var, exp) for var, exp in exponents.items() if exp]
        if any(exp < 0 for _, exp in items):
            raise ValueError("Monomial exponents must be positive")
        items.sort(key=lambda item: item[0].sort_key)
        return cls(tuple(items))

    @classmethod
    def of(cls, var: JetVariable, exponent: int = 1) -> Monomial:
        return cls(((var, exponent),)) if exponent else cls()

    @property
    def degree(self) -> int:
        return sum(exp for _, exp in self.powers)

    @property
    def lex_key(self) -> tuple:
        """Sort key putting lexicographically larger monomials first"""
        return tuple((var.sort_key, -exp) for var, exp in self.powers) + (
            (_END_OF_MONOMIAL, 0),
        )

    def variables(self) -> tuple[JetVariable, ...]:
        return tuple(var for var, _ in self.powers)

    def exponent(self, var: JetVariable) -> int:
        for candidate, exp in self.powers:
            if candidate == var:
                return exp
        return 0

    def __mul__(self, other: Monomial) -> Monomial:
        if not self.powers:
            return other
        if not other.powers:
            return self
        exponents = dict(self.powers)
        for var, exp in other.powers:
            exponents[var] = exponents.get(var, 0) + exp
        return Monomial.from_exponents(exponents)

    def lower(self, var: JetVariable) -> Monomial:
        """This monomial divided once by ``var`` (which must occur in it)"""
        exponents = dict(self.powers)
        exponents[var] -= 1
        return Monomial.from_exponents(exponents)

    def __bool__(self):
        return bool(self.powers)


ONE_MONOMIAL = Monomial()


class DiffPolynomial:
    """
    Immutable sparse polynomial: a map from monomials to nonzero rationals.

    The stored form is canonical, so ``==`` decides algebraic equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        self._terms = {
            mono: Fraction(coeff) for mono, coeff in (terms or {}).items() if coeff
        }
        self._hash = None

    @classmethod
    def _canonical(cls, terms: dict[Monomial, Fraction]) -> DiffPolynomial:
        poly = cls.__new__(cls)
        poly._terms = {mono: coeff for mono, coeff in terms.items() if coeff}
        poly._hash = None
        return poly

    # Constructors

    @classmethod
    def constant(cls, value: Scalar) -> DiffPolynomial:
        return cls({ONE_MONOMIAL: value})

    @classmethod
    def jet(cls, var: JetVariable) -> DiffPolynomial:
        return cls({Monomial.of(var): 1})

    @classmethod
    def variable(cls, symbol: str, nx: int = 0, ny: int = 0) -> DiffPolynomial:
        return cls.jet(JetVariable(symbol, nx, ny))

    @classmethod
    def coerce(cls, value) -> DiffPolynomial:
        if isinstance(value, DiffPolynomial):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.constant(value)
        raise TypeError(f"Cannot use {type(value).__name__} as a differential polynomial")

    # Inspection

    def __bool__(self):
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get(ONE_MONOMIAL, Fraction(0))

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(monomial, Fraction(0))

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in printing order (lexicographically descending)"""
        return sorted(self._terms.items(), key=lambda item: item[0].lex_key)

    def __len__(self):
        return len(self._terms)

    @property
    def degree(self) -> int:
        return max((mono.degree for mono in self._terms), default=-1)

    def variables(self) -> frozenset[JetVariable]:
        return frozenset(var for mono in self._terms for var in mono.variables())

    def symbols(self) -> frozenset[str]:
        return frozenset(var.symbol for var in self.variables())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DiffPolynomial.constant(other)
        if not isinstance(other, DiffPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"DiffPolynomial({str(self)!r})"

    def __str__(self):
        from .textio import format_polynomial

        return format_polynomial(self)

    # Arithmetic

    def __add__(self, other):
        try:
            other = DiffPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            terms[mono] = terms.get(mono, 0) + coeff
        return DiffPolynomial._canonical(terms)

    __radd__ = __add__

    def __neg__(self):
        return DiffPolynomial._canonical(
            {mono: -coeff for mono, coeff in self._terms.items()}
        )

    def __sub__(self, other):
        try:
            other = DiffPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return DiffPolynomial.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return DiffPolynomial._canonical(
                {mono: coeff * other for mono, coeff in self._terms.items()}
            )
        if not isinstance(other, DiffPolynomial):
            return NotImplemented
        terms: dict[Monomial, Fraction] = {}
        for left_mono, left_coeff in self._terms.items():
            for right_mono, right_coeff in other._terms.items():
                mono = left_mono * right_mono
                terms[mono] = terms.get(mono, 0) + left_coeff * right_coeff
        return DiffPolynomial._canonical(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Only non-negative integer powers are defined")
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # Differential structure

    def derivative(self, direction: str) -> DiffPolynomial:
        """Total derivative in ``direction``; satisfies the product rule"""
        check_direction(direction)
        terms: dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            for var, exp in mono.powers:
                term = mono.lower(var) * Monomial.of(var.derive(direction))
                terms[term] = terms.get(term, 0) + coeff * exp
        return DiffPolynomial._canonical(terms)

    def derivative_many(self, nx: int = 0, ny: int = 0) -> DiffPolynomial:
        result = self
        for _ in range(nx):
            result = result.derivative(X)
        for _ in range(ny):
            result = result.derivative(Y)
        return result

    def substitute(self, bindings: Mapping[JetVariable, DiffPolynomial]) -> DiffPolynomial:
        """Simultaneously replace the bound jet variables"""
        if not bindings:
            return self
        powers_cache: dict[tuple[JetVariable, int], DiffPolynomial] = {}
        result: dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            kept: dict[JetVariable, int] = {}
            product = ONE
            for var, exp in mono.powers:
                if var in bindings:
                    key = (var, exp)
                    if key not in powers_cache:
                        powers_cache[key] = DiffPolynomial.coerce(bindings[var]) ** exp
                    product = product * powers_cache[key]
                else:
                    kept[var] = exp
            rest = Monomial.from_exponents(kept)
            for sub_mono, sub_coeff in product._terms.items():
                term = rest * sub_mono
                result[term] = result.get(term, 0) + coeff * sub_coeff
        return DiffPolynomial._canonical(result)

    def evaluate(self, point: Mapping[JetVariable, Scalar]) -> Fraction:
        """Exact value at ``point``; raises UnboundJet for a missing variable"""
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            value = coeff
            for var, exp in mono.powers:
                if var not in point:
                    raise UnboundJet(var)
                value *= Fraction(point[var]) ** exp
            total += value
        return total


ZERO = DiffPolynomial()
ONE = DiffPolynomial.constant(1)


def poly_add(p: DiffPolynomial, q: DiffPolynomial) -> DiffPolynomial:
    return DiffPolynomial.coerce(p) + q


def poly_sub(p: DiffPolynomial, q: DiffPolynomial) -> DiffPolynomial:
    return DiffPolynomial.coerce(p) - q


def poly_neg(p: DiffPolynomial) -> DiffPolynomial:
    return -DiffPolynomial.coerce(p)


def poly_mul(p: DiffPolynomial, q: DiffPolynomial) -> DiffPolynomial:
    return DiffPolynomial.coerce(p) * DiffPolynomial.coerce(q)


def poly_pow(p: DiffPolynomial, exponent: int) -> DiffPolynomial:
    return DiffPolynomial.coerce(p) ** exponent


def poly_sum(polys: Iterable[DiffPolynomial]) -> DiffPolynomial:
    terms: dict[Monomial, Fraction] = {}
    for poly in polys:
        for mono, coeff in DiffPolynomial.coerce(poly)._terms.items():
            terms[mono] = terms.get(mono, 0) + coeff
    return DiffPolynomial._canonical(terms)


def total_derivative(p: DiffPolynomial, direction: str) -> DiffPolynomial:
    return DiffPolynomial.coerce(p).derivative(direction)


def total_derivative_many(p: DiffPolynomial, nx: int = 0, ny: int = 0) -> DiffPolynomial:
    return DiffPolynomial.coerce(p).derivative_many(nx, ny)


def substitute(
    p: DiffPolynomial, bindings: Mapping[JetVariable, DiffPolynomial]
) -> DiffPolynomial:
    return DiffPolynomial.coerce(p).substitute(bindings)


def evaluate(p: DiffPolynomial, point: Mapping[JetVariable, Scalar]) -> Fraction:
    return DiffPolynomial.coerce(p).evaluate(point)


def variables(p: DiffPolynomial) -> frozenset[JetVariable]:
    return DiffPolynomial.coerce(p).variables()


def var(symbol: str, nx: int = 0, ny: int = 0) -> DiffPolynomial:
    """Shorthand for the polynomial consisting of one jet variable"""
    return DiffPolynomial.variable(symbol, nx, ny)
