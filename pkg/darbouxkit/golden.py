"""Reference invariants of the order-5 pair and the P_i table, in the textio wire format."""

from pathlib import Path
from typing import NamedTuple

from .invariants import InvariantSet
from .operators import LaplaceOperator, NormalizedM
from .ring import DiffPolynomial
from .textio import parse_operator, parse_polynomial, read_expressions

GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


class GoldenExample(NamedTuple):
    laplace: LaplaceOperator
    M: NormalizedM
    expected: InvariantSet


def example_d5() -> GoldenExample:
    """The order-5 pair (L, M) with its thirteen expected invariants"""
    lines = read_expressions(GOLDEN_DIR / "example_d5.txt")
    laplace = LaplaceOperator.from_operator(parse_operator(lines[0]))
    M = NormalizedM.from_operator(parse_operator(lines[1]))
    m, h, *rest = [parse_polynomial(line) for line in lines[2:]]
    R = dict(zip(InvariantSet.index_order(M.d), rest, strict=True))
    return GoldenExample(laplace, M, InvariantSet(d=M.d, m=m, h=h, R=R))


def p_table() -> list[DiffPolynomial]:
    """P_0(b), ..., P_5(b)"""
    return [parse_polynomial(line) for line in read_expressions(GOLDEN_DIR / "p_table.txt")]
