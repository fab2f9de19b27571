"""
Partial and complete Bell polynomials over differential-polynomial arguments.

``bell_complete_det`` evaluates the determinant representation and serves as
an independent check on the multinomial sum.
"""

import logging
from collections import Counter
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

from .exceptions import BadIndex
from .ring import ONE, ZERO, DiffPolynomial, binomial, check_direction, poly_sum

logger = logging.getLogger(__name__)

BellArgs = Sequence[DiffPolynomial]


def integer_partitions(n: int, parts: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """
    Partitions of ``n`` into exactly ``parts`` positive parts, non-increasing

    Args:
        n: the integer to split
        parts: number of parts
        largest: upper bound on every part (defaults to n)
    """
    if largest is None:
        largest = n
    if parts == 0:
        if n == 0:
            yield ()
        return
    for part in range(min(n - parts + 1, largest), 0, -1):
        if part * parts < n:
            break
        for rest in integer_partitions(n - part, parts - 1, part):
            yield (part,) + rest


def _coerce_args(xs: Iterable, needed: int) -> list[DiffPolynomial]:
    args = [DiffPolynomial.coerce(x) for x in xs]
    if len(args) < needed:
        raise BadIndex(f"Need at least {needed} arguments, got {len(args)}")
    return args[:needed]


def bell_partial(n: int, k: int, xs: BellArgs) -> DiffPolynomial:
    """
    Partial Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1})

    Sums n!/(j_1! j_2! ...) * (x_1/1!)^j_1 (x_2/2!)^j_2 ... over the sequences
    with j_1 + j_2 + ... = k and j_1 + 2 j_2 + ... = n, i.e. over the
    partitions of n into k parts. Arguments beyond x_{n-k+1} are ignored.
    """
    if n < 0 or k < 0 or k > n:
        raise BadIndex(f"B_{{{n},{k}}} needs 0 <= k <= n")
    if k == 0:
        return ONE if n == 0 else ZERO
    args = _coerce_args(xs, n - k + 1)

    powers: dict[tuple[int, int], DiffPolynomial] = {}

    def power(i: int, j: int) -> DiffPolynomial:
        if (i, j) not in powers:
            powers[(i, j)] = args[i - 1] ** j
        return powers[(i, j)]

    terms = []
    for parts in integer_partitions(n, k, n - k + 1):
        counts = Counter(parts)
        denominator = prod(factorial(j) * factorial(i) ** j for i, j in counts.items())
        monomial = ONE
        for i, j in sorted(counts.items()):
            monomial = monomial * power(i, j)
        terms.append(monomial * (factorial(n) // denominator))
    return poly_sum(terms)


def bell_complete(n: int, xs: BellArgs) -> DiffPolynomial:
    """Complete Bell polynomial B_n = sum of B_{n,k} for k = 1..n; B_0 = 1"""
    if n < 0:
        raise BadIndex(f"B_{n} needs n >= 0")
    if n == 0:
        return ONE
    args = _coerce_args(xs, n)
    return poly_sum(bell_partial(n, k, args) for k in range(1, n + 1))


def determinant(matrix: Sequence[Sequence[DiffPolynomial]]) -> DiffPolynomial:
    """
    Exact determinant over the polynomial ring by cofactor expansion

    Expands along the leftmost remaining column, skipping zero entries, and
    memoizes minors on the set of rows left. No division is needed, so the
    result is exact over any commutative ring.
    """
    size = len(matrix)
    rows = [[DiffPolynomial.coerce(entry) for entry in row] for row in matrix]
    if any(len(row) != size for row in rows):
        raise ValueError("determinant needs a square matrix")

    minors: dict[tuple[int, ...], DiffPolynomial] = {}

    def minor(remaining: tuple[int, ...]) -> DiffPolynomial:
        column = size - len(remaining)
        if column == size:
            return ONE
        if remaining in minors:
            return minors[remaining]
        terms = []
        for position, row in enumerate(remaining):
            entry = rows[row][column]
            if entry.is_zero:
                continue
            cofactor = entry * minor(remaining[:position] + remaining[position + 1 :])
            terms.append(-cofactor if position % 2 else cofactor)
        minors[remaining] = poly_sum(terms)
        return minors[remaining]

    return minor(tuple(range(size)))


def bell_matrix(n: int, xs: BellArgs) -> list[list[DiffPolynomial]]:
    """The n x n Hessenberg matrix whose determinant is B_n(x_1, ..., x_n)"""
    args = _coerce_args(xs, n)
    minus_one = DiffPolynomial.constant(-1)
    matrix = []
    for r in range(n):
        row = []
        for c in range(n):
            if c >= r:
                row.append(args[c - r] * binomial(n - 1 - r, c - r))
            elif c == r - 1:
                row.append(minus_one)
            else:
                row.append(ZERO)
        matrix.append(row)
    return matrix


def bell_complete_det(n: int, xs: BellArgs) -> DiffPolynomial:
    """Complete Bell polynomial through its determinant representation"""
    if n < 0:
        raise BadIndex(f"B_{n} needs n >= 0")
    return determinant(bell_matrix(n, xs))


def bell_arguments(
    f: DiffPolynomial, direction: str, count: int, sign: int = -1
) -> list[DiffPolynomial]:
    """The list (sign*f, sign*∂f, ..., sign*∂^(count-1) f) in ``direction``"""
    check_direction(direction)
    f = DiffPolynomial.coerce(f)
    args = []
    for _ in range(count):
        args.append(f * sign)
        f = f.derivative(direction)
    return args


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """Every partition of ``items`` into non-empty blocks, by brute force"""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in set_partitions(rest):
        # insert `first` in each block of the smaller partition
        for n, block in enumerate(smaller):
            yield smaller[:n] + [[first] + block] + smaller[n + 1 :]
        # or give it a block of its own
        yield [[first]] + smaller


def bell_number(n: int) -> int:
    """Number of set partitions of an n-element set, counted one by one"""
    return sum(1 for _ in set_partitions(range(n)))
