"""Exact linear algebra over the lattice N = Z^n

Points of N are integer tuples, points of N_Q are tuples of Fraction. Python
integers are unbounded, so nothing here can overflow or round.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from utils.errors import LatticeError

Rational = Fraction
LatticeVector = Tuple[int, ...]
RationalVector = Tuple[Fraction, ...]
Number = Union[int, Fraction]


@dataclass(frozen=True)
class IntMatrix:
    """
    Rectangular integer matrix, stored row-major
    """

    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise LatticeError("matrix entries do not match its dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        width = cols if cols is not None else (len(entries[0]) if entries else 0)
        return cls(len(entries), width, entries)

    @classmethod
    def identity(cls, size: int) -> "IntMatrix":
        return cls(
            size,
            size,
            tuple(tuple(1 if i == j else 0 for j in range(size)) for i in range(size)),
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise LatticeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        entries = tuple(
            tuple(
                sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                for j in range(other.cols)
            )
            for i in range(self.rows)
        )
        return IntMatrix(self.rows, other.cols, entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def is_diagonal(self) -> bool:
        return all(
            self.entries[i][j] == 0
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )

    def determinant(self) -> int:
        """Exact determinant of a square matrix"""
        if self.rows != self.cols:
            raise LatticeError("determinant of a non-square matrix")
        work = [[Fraction(x) for x in row] for row in self.entries]
        size = self.rows
        det = Fraction(1)
        for col in range(size):
            pivot = next((r for r in range(col, size) if work[r][col] != 0), None)
            if pivot is None:
                return 0
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                det = -det
            det *= work[col][col]
            for r in range(col + 1, size):
                factor = work[r][col] / work[col][col]
                if factor:
                    work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
        return int(det)


def _swap_rows(m: List[List[int]], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: List[List[int]], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m: List[List[int]], target: int, source: int, factor: int) -> None:
    # row[target] += factor * row[source]
    m[target] = [a + factor * b for a, b in zip(m[target], m[source])]


def _add_col(m: List[List[int]], target: int, source: int, factor: int) -> None:
    for row in m:
        row[target] += factor * row[source]


def smith_normal_form(matrix: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Smith normal form S = U * M * V with U, V unimodular

    The pivot is always the entry of smallest absolute value in the remaining
    block, ties broken row-major, so equal inputs give equal outputs.

    Args:
        matrix: any integer matrix

    Returns:
        Tuple (S, U, V); S is diagonal with d_1 | d_2 | ... and d_i >= 0
    """
    rows, cols = matrix.rows, matrix.cols
    s = [list(row) for row in matrix.entries]
    u = [list(row) for row in IntMatrix.identity(rows).entries]
    v = [list(row) for row in IntMatrix.identity(cols).entries]

    for t in range(min(rows, cols)):
        while True:
            candidates = [
                (abs(s[i][j]), i, j)
                for i in range(t, rows)
                for j in range(t, cols)
                if s[i][j] != 0
            ]
            if not candidates:
                return _finish(s, u, v, rows, cols)
            _, pi, pj = min(candidates)
            if pi != t:
                _swap_rows(s, pi, t)
                _swap_rows(u, pi, t)
            if pj != t:
                _swap_cols(s, pj, t)
                _swap_cols(v, pj, t)

            pivot = s[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = s[i][t] // pivot
                if q:
                    _add_row(s, i, t, -q)
                    _add_row(u, i, t, -q)
                if s[i][t] != 0:
                    clean = False
            for j in range(t + 1, cols):
                q = s[t][j] // pivot
                if q:
                    _add_col(s, j, t, -q)
                    _add_col(v, j, t, -q)
                if s[t][j] != 0:
                    clean = False
            if not clean:
                continue

            # divisibility: fold an offending row into the pivot row and repeat
            offender = next(
                (
                    i
                    for i in range(t + 1, rows)
                    for j in range(t + 1, cols)
                    if s[i][j] % pivot != 0
                ),
                None,
            )
            if offender is None:
                break
            _add_row(s, t, offender, 1)
            _add_row(u, t, offender, 1)

        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]

    return _finish(s, u, v, rows, cols)


def _finish(
    s: List[List[int]], u: List[List[int]], v: List[List[int]], rows: int, cols: int
) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    return (
        IntMatrix.from_rows(s, cols),
        IntMatrix.from_rows(u, rows),
        IntMatrix.from_rows(v, cols),
    )


def invariant_factors(matrix: IntMatrix) -> Tuple[int, ...]:
    """Nonzero diagonal entries of the Smith normal form"""
    s, _, _ = smith_normal_form(matrix)
    return tuple(d for d in s.diagonal() if d != 0)


def primitive(v: Sequence[int]) -> LatticeVector:
    """
    The primitive lattice vector on the ray through v

    Raises:
        LatticeError: for the zero vector
    """
    g = math.gcd(*v) if v else 0
    if g == 0:
        raise LatticeError("zero has no primitive representative")
    return tuple(int(x) // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    return bool(v) and math.gcd(*v) == 1


def integral_direction(v: Sequence[Number]) -> LatticeVector:
    """Primitive lattice vector on the ray through a rational vector"""
    values = [Fraction(x) for x in v]
    scale = math.lcm(*(x.denominator for x in values)) if values else 1
    return primitive([int(x * scale) for x in values])


def is_integral(v: Sequence[Number]) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def as_rational(v: Sequence[Number]) -> RationalVector:
    return tuple(Fraction(x) for x in v)


def zero_vector(rank: int) -> LatticeVector:
    return (0,) * rank


def vector_add(a: Sequence[Number], b: Sequence[Number]) -> Tuple[Number, ...]:
    if len(a) != len(b):
        raise LatticeError("vectors of different length")
    return tuple(x + y for x, y in zip(a, b))


def vector_sub(a: Sequence[Number], b: Sequence[Number]) -> Tuple[Number, ...]:
    if len(a) != len(b):
        raise LatticeError("vectors of different length")
    return tuple(x - y for x, y in zip(a, b))


def dot(a: Sequence[Number], b: Sequence[Number]) -> Number:
    if len(a) != len(b):
        raise LatticeError("vectors of different length")
    return sum((x * y for x, y in zip(a, b)), 0)


def floor_vector(v: Sequence[Number]) -> LatticeVector:
    """Componentwise floor"""
    return tuple(math.floor(x) for x in v)


def integral_rows(vectors: Sequence[Sequence[Number]]) -> IntMatrix:
    """Rows scaled by positive factors to integer rows; spans and ranks are unchanged"""
    rows = []
    for vector in vectors:
        values = [Fraction(x) for x in vector]
        scale = math.lcm(*(x.denominator for x in values)) if values else 1
        rows.append([int(x * scale) for x in values])
    return IntMatrix.from_rows(rows)


def rank(vectors: Sequence[Sequence[Number]]) -> int:
    """Dimension of the linear span of the given vectors"""
    if not vectors:
        return 0
    return len(invariant_factors(integral_rows(vectors)))


def extends_to_basis(vectors: Sequence[Sequence[int]]) -> bool:
    """
    Whether the vectors form part of a basis of the lattice

    Args:
        vectors: primitive nonzero lattice vectors

    Returns:
        True iff they are linearly independent and all invariant factors are 1

    Raises:
        LatticeError: if some vector is zero or not primitive
    """
    for vector in vectors:
        if not is_primitive(vector):
            raise LatticeError(f"{format_vector(vector)} is not primitive; normalize it first")
    if not vectors:
        return True
    factors = invariant_factors(IntMatrix.from_rows(vectors))
    return len(factors) == len(vectors) and all(d == 1 for d in factors)


def format_vector(v: Sequence[Number]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"
