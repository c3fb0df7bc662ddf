"""Exact rational helpers: parsing, rendering and small dense linear algebra.

Everything here works on ``fractions.Fraction`` so that facet incidences and
lattice claims are decided without rounding; elimination runs on sympy
matrices over QQ.
"""

import math
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Number = Union[int, Fraction]
Vector = Tuple[Fraction, ...]


def to_fraction(value: Union[int, str, Fraction]) -> Fraction:
    """Convert an int, a Fraction or a ``"p/q"`` string to a Fraction.

    Raises:
        ValueError: If the value is a float or an unparsable string
    """
    if isinstance(value, float):
        raise ValueError(f"Refusing inexact float value {value!r}")
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("Empty rational literal")
        # Fraction also accepts decimals like "0.5", which are exact
        return Fraction(text)
    return Fraction(value)


def render(value: Number) -> str:
    """Canonical text form: ``"p"`` for integers, ``"p/q"`` otherwise."""
    return str(Fraction(value))


def render_vector(values: Sequence[Number]) -> List[str]:
    return [render(v) for v in values]


def dot(u: Sequence[Number], v: Sequence[Number]) -> Fraction:
    assert len(u) == len(v), "Cannot dot vectors of different dimensions!"
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def primitive_vector(vector: Sequence[Number]) -> Tuple[Tuple[int, ...], Fraction]:
    """Scale a nonzero rational vector to its primitive integer multiple.

    The sign is fixed so that the first nonzero entry is positive.

    Returns:
        Tuple of (primitive integer vector, factor) with
        ``vector == factor * primitive`` and ``factor`` of either sign.

    Raises:
        ValueError: If the vector is zero
    """
    fractions = [Fraction(x) for x in vector]
    if all(x == 0 for x in fractions):
        raise ValueError("Zero vector has no primitive direction")
    common = reduce(lambda acc, x: acc * x.denominator // math.gcd(acc, x.denominator), fractions, 1)
    scaled = [int(x * common) for x in fractions]
    divisor = reduce(math.gcd, (abs(x) for x in scaled))
    primitive = [x // divisor for x in scaled]
    factor = Fraction(divisor, common)
    first = next(x for x in primitive if x != 0)
    if first < 0:
        primitive = [-x for x in primitive]
        factor = -factor
    return tuple(primitive), factor


def _exact(rows: Sequence[Sequence[Number]], width: int) -> DomainMatrix:
    entries = [[QQ(x.numerator, x.denominator) for x in map(Fraction, row)] for row in rows]
    return DomainMatrix(entries, (len(entries), width), QQ)


def _fraction_rows(matrix: DomainMatrix) -> List[List[Fraction]]:
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in matrix.to_Matrix().tolist()]


def solve(matrix: Sequence[Sequence[Number]], rhs: Sequence[Number]) -> Optional[Vector]:
    """Solve a square system exactly over the rationals.

    Returns:
        The unique solution, or None when the matrix is singular
    """
    size = len(matrix)
    reduced, pivots = _exact([list(row) + [b] for row, b in zip(matrix, rhs)], size + 1).rref()
    if tuple(pivots) != tuple(range(size)):
        return None
    return tuple(row[size] for row in _fraction_rows(reduced))


def null_vector(matrix: Sequence[Sequence[Number]], width: int) -> Optional[Vector]:
    """Return a spanning vector of a one-dimensional kernel.

    Args:
        matrix: Rows of the linear system (may be empty)
        width: Number of columns

    Returns:
        A nonzero kernel vector when the kernel has dimension exactly one,
        otherwise None
    """
    if not matrix:
        return (Fraction(1),) if width == 1 else None
    reduced, pivots = _exact(matrix, width).rref()
    free = [c for c in range(width) if c not in pivots]
    if len(free) != 1:
        return None
    rows = _fraction_rows(reduced)
    kernel = [Fraction(0)] * width
    kernel[free[0]] = Fraction(1)
    for i, col in enumerate(pivots):
        kernel[col] = -rows[i][free[0]]
    return tuple(kernel)
