import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from models.lattice import (
    IntMatrix,
    extends_to_basis,
    floor_vector,
    integral_direction,
    invariant_factors,
    is_primitive,
    primitive,
    rank,
    smith_normal_form,
)
from utils.errors import LatticeError

small = st.integers(min_value=-6, max_value=6)


@st.composite
def square_matrices(draw, size=None):
    n = size if size is not None else draw(st.integers(min_value=1, max_value=3))
    return IntMatrix.from_rows([[draw(small) for _ in range(n)] for _ in range(n)])


@st.composite
def unimodular(draw, n):
    """Products of elementary integer row operations"""
    m = IntMatrix.identity(n)
    for _ in range(draw(st.integers(min_value=0, max_value=6))):
        i = draw(st.integers(min_value=0, max_value=n - 1))
        j = draw(st.integers(min_value=0, max_value=n - 1))
        if i == j:
            continue
        factor = draw(st.integers(min_value=-3, max_value=3))
        rows = [list(row) for row in m.entries]
        rows[i] = [a + factor * b for a, b in zip(rows[i], rows[j])]
        m = IntMatrix.from_rows(rows)
    return m


def test_primitive():
    assert primitive((2, 4)) == (1, 2)
    assert primitive((-3, 0, 6)) == (-1, 0, 2)
    assert primitive((0, -5)) == (0, -1)
    assert is_primitive((1, 2))
    assert not is_primitive((2, 4))


def test_primitive_of_zero():
    with pytest.raises(LatticeError, match="zero has no primitive representative"):
        primitive((0, 0))


def test_integral_direction():
    assert integral_direction((Fraction(-1, 2), 1)) == (-1, 2)
    assert integral_direction((Fraction(2, 3), Fraction(4, 3))) == (1, 2)


def test_floor_vector():
    assert floor_vector((Fraction(-1, 2), Fraction(3, 2), 2)) == (-1, 1, 2)


def test_smith_normal_form_examples():
    s, _, _ = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert s.entries == ((1, 0), (0, 6))

    s, _, _ = smith_normal_form(IntMatrix.from_rows([[1, 1], [1, 1]]))
    assert s.entries == ((1, 0), (0, 0))

    s, _, _ = smith_normal_form(IntMatrix.identity(3))
    assert s == IntMatrix.identity(3)


def test_smith_normal_form_rectangular():
    m = IntMatrix.from_rows([[1, 2], [-1, 2]])
    assert invariant_factors(m) == (1, 4)
    assert invariant_factors(IntMatrix.from_rows([[2, 4, 6]])) == (2,)
    assert invariant_factors(IntMatrix.from_rows([[0, 0], [0, 0]])) == ()


@settings(max_examples=80, deadline=None)
@given(square_matrices())
def test_smith_normal_form_is_equivalent(m):
    s, u, v = smith_normal_form(m)
    assert u @ m @ v == s
    assert s.is_diagonal()
    assert abs(u.determinant()) == 1
    assert abs(v.determinant()) == 1
    diagonal = s.diagonal()
    assert all(d >= 0 for d in diagonal)
    nonzero = [d for d in diagonal if d]
    assert diagonal[: len(nonzero)] == tuple(nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@settings(max_examples=80, deadline=None)
@given(square_matrices())
def test_invariant_factors_against_sympy(m):
    factors = invariant_factors(m)
    matrix = sympy.Matrix([list(row) for row in m.entries])
    assert len(factors) == matrix.rank()
    if factors:
        assert factors[0] == math.gcd(*(x for row in m.entries for x in row))
    if len(factors) == m.rows:
        assert math.prod(factors) == abs(int(matrix.det()))


def test_rank():
    assert rank([(1, 0), (2, 0)]) == 1
    assert rank([(Fraction(1, 2), 1), (1, 2), (0, 1)]) == 2
    assert rank([]) == 0


def test_extends_to_basis_examples():
    assert extends_to_basis([(1, 0)])
    assert extends_to_basis([(1, 1), (0, -1)])
    assert extends_to_basis([(1, 0, 0), (0, 1, 0)])
    assert not extends_to_basis([(1, 2), (1, -2)])
    assert not extends_to_basis([(1, 0), (0, 1), (1, 1)])
    assert not extends_to_basis([(1, 1, 0), (1, -1, 0)])
    assert extends_to_basis([])


def test_extends_to_basis_rejects_non_primitive():
    with pytest.raises(LatticeError):
        extends_to_basis([(2, 0)])
    with pytest.raises(LatticeError):
        extends_to_basis([(0, 0)])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_extends_to_basis_is_unimodular_invariant(data):
    n = data.draw(st.integers(min_value=2, max_value=3))
    count = data.draw(st.integers(min_value=1, max_value=n))
    vectors = [
        primitive(v)
        for v in data.draw(
            st.lists(
                st.tuples(*[small] * n).filter(any),
                min_size=count,
                max_size=count,
            )
        )
    ]
    g = data.draw(unimodular(n))
    moved = [primitive((IntMatrix.from_rows([v]) @ g.transpose()).entries[0]) for v in vectors]
    assert extends_to_basis(vectors) == extends_to_basis(moved)
    assert extends_to_basis(vectors) == extends_to_basis(list(reversed(vectors)))
