"""
Text syntax for operators and differential polynomials.

Grammar (whitespace insensitive)::

    expression := term (('+' | '-') term)*
    term       := factor ('*' factor)*
    factor     := ['-'] (rational | atom ['^' int])
    atom       := 'Dx' | 'Dy' | ident ['[' int ']'] ['_' [xy]+] | '(' expression ')'

Products are composed left to right and do not commute: ``Dx*a`` is
``a*Dx + a_x``. Derivative suffix letters commute and print x-first.
"""

import logging
import re
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from .exceptions import NegativePower, OperatorSyntaxError
from .operators import LinearDiffOperator, op_compose
from .ring import DiffPolynomial, JetVariable, Monomial

logger = logging.getLogger(__name__)

GRAMMAR = r"""
?start: expr

?expr: term
     | expr "+" term           -> add
     | expr "-" term           -> sub

?term: unary
     | term "*" unary          -> mul

?unary: power
      | "-" unary              -> neg
      | "+" unary

?power: atom
      | atom "^" NUMBER        -> pow
      | atom "^" "-" NUMBER    -> negative_pow

?atom: NUMBER                  -> number
     | NAME                    -> name
     | "(" expr ")"

NAME: /[A-Za-z][A-Za-z0-9]*(\[-?[0-9]+\])?(_[xy]+)?/
NUMBER: /[0-9]+(\/[0-9]+)?/

%import common.WS
%ignore WS
"""

_NAME = re.compile(r"^(?P<symbol>[A-Za-z][A-Za-z0-9]*(\[-?[0-9]+\])?)(_(?P<suffix>[xy]+))?$")


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(GRAMMAR, parser="lalr", start="start")


def jet_from_name(name: str) -> JetVariable:
    """``m[-3]_xy`` -> JetVariable("m[-3]", 1, 1)"""
    match = _NAME.match(name)
    if not match:
        raise OperatorSyntaxError(f"Malformed jet name {name!r}")
    suffix = match["suffix"] or ""
    return JetVariable(match["symbol"], suffix.count("x"), suffix.count("y"))


def _index_of(symbol: str) -> str:
    # m[03] and m[3] name the same coefficient
    if "[" not in symbol:
        return symbol
    base, index = symbol[:-1].split("[")
    return f"{base}[{int(index)}]"


@v_args(inline=True)
class _Elaborate(Transformer):
    """Turn the syntax tree into a normal-form operator"""

    def number(self, token: Token):
        _, _, denominator = str(token).partition("/")
        if denominator and int(denominator) == 0:
            raise OperatorSyntaxError("Zero denominator", token.line, token.column)
        return LinearDiffOperator.multiplication(Fraction(str(token)))

    def name(self, token: Token):
        text = str(token)
        if text == "Dx":
            return LinearDiffOperator.dx()
        if text == "Dy":
            return LinearDiffOperator.dy()
        jet = jet_from_name(text)
        jet = JetVariable(_index_of(jet.symbol), jet.nx, jet.ny)
        return LinearDiffOperator.multiplication(DiffPolynomial.jet(jet))

    def add(self, left, right):
        return left + right

    def sub(self, left, right):
        return left - right

    def neg(self, operand):
        return -operand

    def mul(self, left, right):
        return op_compose(left, right)

    def pow(self, base, exponent: Token):
        text = str(exponent)
        if "/" in text:
            raise OperatorSyntaxError(
                "Exponents must be integers", exponent.line, exponent.column
            )
        result = LinearDiffOperator.identity()
        for _ in range(int(text)):
            result = op_compose(result, base)
        return result

    def negative_pow(self, base, exponent: Token):
        raise NegativePower(
            f"Negative power -{exponent} is not defined", exponent.line, exponent.column
        )


def parse_expression(text: str):
    """The syntax tree of ``text``; raises OperatorSyntaxError with line/column"""
    try:
        return _parser().parse(text)
    except UnexpectedInput as exc:
        message = str(exc).strip().splitlines()[0]
        line = exc.line if exc.line and exc.line > 0 else None
        column = exc.column if line is not None else None
        raise OperatorSyntaxError(message, line, column) from exc


def elaborate(tree) -> LinearDiffOperator:
    try:
        return _Elaborate().transform(tree)
    except VisitError as exc:
        raise exc.orig_exc from exc


def parse_operator(text: str) -> LinearDiffOperator:
    """Parse ``text`` into a LinearDiffOperator in normal form"""
    if not text or not text.strip():
        raise OperatorSyntaxError("Empty expression")
    return elaborate(parse_expression(text))


def parse_polynomial(text: str) -> DiffPolynomial:
    """Parse an expression that must not contain Dx or Dy"""
    operator = parse_operator(text)
    if operator.order > 0:
        raise OperatorSyntaxError(f"Expected a differential polynomial, got operator {text!r}")
    return operator.coefficient(0, 0)


def parse_polynomial_list(text: str) -> list[DiffPolynomial]:
    """Comma separated polynomials, e.g. ``x1, x2, -b_x``"""
    return [parse_polynomial(part) for part in text.split(",")]


def read_expressions(path) -> list[str]:
    """One expression per line; blank lines and lines starting with '#' are skipped"""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [line.strip() for line in lines if line.strip() and not line.strip().startswith("#")]


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_monomial(mono: Monomial) -> str:
    return "*".join(str(var) if exp == 1 else f"{var}^{exp}" for var, exp in mono.powers)


def _signed_terms(poly: DiffPolynomial, suffix: str = "") -> list[tuple[str, str]]:
    terms = []
    for mono, coeff in poly.terms():
        magnitude = abs(coeff)
        factors = []
        if magnitude != 1 or (not mono and not suffix):
            factors.append(format_rational(magnitude))
        if mono:
            factors.append(format_monomial(mono))
        if suffix:
            factors.append(suffix)
        terms.append(("-" if coeff < 0 else "+", "*".join(factors)))
    return terms


def _join(terms: list[tuple[str, str]]) -> str:
    if not terms:
        return "0"
    sign, body = terms[0]
    pieces = [body if sign == "+" else f"-{body}"]
    pieces.extend(f" {sign} {body}" for sign, body in terms[1:])
    return "".join(pieces)


def format_polynomial(poly: DiffPolynomial) -> str:
    return _join(_signed_terms(poly))


def _derivative_monomial(i: int, j: int) -> str:
    factors = []
    if i:
        factors.append("Dx" if i == 1 else f"Dx^{i}")
    if j:
        factors.append("Dy" if j == 1 else f"Dy^{j}")
    return "*".join(factors)


def format_operator(P: LinearDiffOperator) -> str:
    """Canonical text: decreasing total order, ties by the Dx power descending"""
    terms = []
    for (i, j), coeff in P.items():
        derivative = _derivative_monomial(i, j)
        if not derivative or len(coeff) == 1:
            terms.extend(_signed_terms(coeff, derivative))
        else:
            terms.append(("+", f"({format_polynomial(coeff)})*{derivative}"))
    return _join(terms)
