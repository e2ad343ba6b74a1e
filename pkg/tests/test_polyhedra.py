from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from models.polyhedra import (
    EMPTY,
    Cone,
    Polyhedron,
    contains,
    dual_description,
    faces,
    facets,
    intersect,
    is_face,
    is_regular,
    lattice_translate_of,
    minkowski_sum,
    restrict,
    tail_cone,
    translate_of,
    vertex_enumeration,
)
from utils.errors import GeometryError, RegularityError

half = Fraction(1, 2)
square = Polyhedron.from_generators(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
cube = Polyhedron.from_generators(
    3, [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
)
simplex = Polyhedron.from_generators(2, [(0, 0), (1, 0), (0, 1)])

coordinates = st.integers(min_value=-3, max_value=3)
POINTED_CONES = [
    Cone.from_rays(2, [(1, 0), (0, 1)]),
    Cone.from_rays(2, [(1, 0), (1, 2)]),
    Cone.from_rays(2, [(-1, 1)]),
    Cone.zero(2),
]


@st.composite
def polytopes(draw):
    points = draw(st.lists(st.tuples(coordinates, coordinates), min_size=1, max_size=4))
    return Polyhedron.from_generators(2, points)


def test_canonical_form():
    p = Polyhedron.from_generators(2, [(1, 1), (0, 0), (1, 0), (0, 1), (half, half)])
    assert p == square
    assert p.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert Polyhedron.from_generators(1, [(0,)], [(3,)]).tail_rays == ((1,),)


def test_generators_with_a_line():
    with pytest.raises(GeometryError):
        Polyhedron.from_generators(1, [(0,)], [(1,), (-1,)])
    with pytest.raises(GeometryError):
        Polyhedron.from_generators(2, [])


def test_interval():
    assert Polyhedron.interval(1, None).describe() == "[1, inf)"
    assert Polyhedron.interval(None, -1).describe() == "(-inf, -1]"
    assert Polyhedron.interval(-1, 0).describe() == "[-1, 0]"
    assert Polyhedron.interval(half, half) == Polyhedron.point((half,))
    assert Polyhedron.interval(half, half).describe() == "{1/2}"
    with pytest.raises(GeometryError):
        Polyhedron.interval(2, 1)


def test_cones_keep_the_origin_as_vertex():
    assert Polyhedron.interval(0, None).vertices == ((0,),)
    assert Polyhedron.interval(None, 0).vertices == ((0,),)
    q_ge = Cone.from_rays(1, [(1,)]).as_polyhedron()
    assert intersect(q_ge, q_ge) == q_ge
    assert intersect(q_ge, Polyhedron.interval(None, 0)) == Polyhedron.point((0,))
    wedge = Cone.from_rays(2, [(1, 1), (0, -1)]).as_polyhedron()
    assert vertex_enumeration(2, dual_description(wedge)) == wedge
    assert vertex_enumeration(2, [((1, 0), 0), ((-1, 0), 0), ((0, 1), 0)]) == Polyhedron.from_generators(
        2, [(0, 0)], [(0, 1)]
    )


def test_tail_cone():
    assert tail_cone(Polyhedron.interval(-1, 0)) == Cone.zero(1)
    assert tail_cone(Polyhedron.interval(1, None)).rays == ((1,),)
    p = Polyhedron.from_generators(2, [(0, 0), (1, 0)], [(0, 1)])
    assert tail_cone(p).rays == ((0, 1),)


def test_minkowski_sum():
    assert minkowski_sum(Polyhedron.interval(1, None), Polyhedron.interval(0, None)) == Polyhedron.interval(1, None)
    assert minkowski_sum(Polyhedron.interval(-1, 0), Polyhedron.point((0,))) == Polyhedron.interval(-1, 0)
    assert minkowski_sum(Polyhedron.interval(None, -1), Polyhedron.interval(None, 0)) == Polyhedron.interval(None, -1)
    assert minkowski_sum(square, simplex) == Polyhedron.from_generators(
        2, [(0, 0), (2, 0), (0, 2), (2, 1), (1, 2)]
    )


def test_minkowski_sum_with_empty():
    assert minkowski_sum(EMPTY, square) is EMPTY
    assert minkowski_sum(square, EMPTY) is EMPTY


@settings(max_examples=40, deadline=None)
@given(polytopes(), polytopes(), polytopes())
def test_minkowski_sum_is_commutative_and_associative(p, q, r):
    assert minkowski_sum(p, q) == minkowski_sum(q, p)
    assert minkowski_sum(minkowski_sum(p, q), r) == minkowski_sum(p, minkowski_sum(q, r))


@settings(max_examples=30, deadline=None)
@given(polytopes(), st.sampled_from(POINTED_CONES), st.sampled_from(POINTED_CONES))
def test_tail_of_sum_is_sum_of_tails(p, sigma, tau):
    first = minkowski_sum(p, sigma.as_polyhedron())
    second = minkowski_sum(p, tau.as_polyhedron())
    total = minkowski_sum(first, second)
    assert tail_cone(total) == Cone.from_rays(2, sigma.rays + tau.rays)


def test_intersect():
    assert intersect(Polyhedron.interval(0, None), Polyhedron.interval(None, 0)) == Polyhedron.point((0,))
    assert intersect(Polyhedron.interval(1, None), Polyhedron.interval(None, 0)) is EMPTY
    assert intersect(EMPTY, square) is EMPTY
    assert restrict(square, [((1, 0), 1)]) == Polyhedron.from_generators(2, [(1, 0), (1, 1)])
    assert restrict(square, [((1, 0), 2)]) is EMPTY


def test_intersect_rank_mismatch():
    with pytest.raises(GeometryError):
        intersect(square, cube)


def test_dual_description():
    assert len(dual_description(cube)) == 6
    assert len(dual_description(simplex)) == 3
    assert Cone.from_rays(2, [(1, 1), (0, -1)]).facet_normals == ((1, -1), (1, 0))


def test_dual_description_of_lower_dimensional():
    segment = Polyhedron.from_generators(2, [(0, 0), (1, 1)])
    assert segment.dimension == 1
    rows = dual_description(segment)
    assert len(rows) == 4
    assert vertex_enumeration(2, rows) == segment


@pytest.mark.parametrize(
    "p",
    [
        square,
        cube,
        simplex,
        Polyhedron.interval(half, None),
        Polyhedron.point((1, -2)),
        Polyhedron.from_generators(2, [(0, 0), (1, 0)], [(0, 1), (1, 2)]),
    ],
)
def test_vertex_enumeration_inverts_dual_description(p):
    assert vertex_enumeration(p.rank, dual_description(p)) == p


def test_faces():
    assert len(faces(square)) == 9
    assert len(faces(cube)) == 27
    assert len(facets(square)) == 4
    assert faces(square)[-1] == square
    assert [f.dimension for f in faces(Polyhedron.interval(0, None))] == [0, 1]


def test_is_face():
    assert is_face(Polyhedron.point((0,)), Polyhedron.interval(0, None))
    assert not is_face(Polyhedron.point((0,)), Polyhedron.interval(-1, None))
    assert is_face(Polyhedron.interval(-1, 0), Polyhedron.interval(-1, 0))
    assert is_face(EMPTY, square)
    assert not is_face(Polyhedron.from_generators(2, [(0, 0), (1, 1)]), square)


def test_faces_of_faces_are_faces():
    for face in faces(cube):
        for subface in faces(face):
            assert is_face(subface, cube)


def test_contains():
    assert contains(Polyhedron.interval(0, None), Polyhedron.interval(1, 2))
    assert contains(Polyhedron.interval(0, None), Polyhedron.interval(1, None))
    assert not contains(Polyhedron.interval(0, None), Polyhedron.interval(None, 1))
    assert contains(square, EMPTY)
    assert not contains(EMPTY, square)


def test_cone_descriptions():
    cone = Cone.from_rays(2, [(1, 0), (0, 1), (1, 1)])
    assert cone.rays == ((0, 1), (1, 0))
    assert cone.dimension == 2
    assert Cone.from_rays(1, [(2,)]).describe() == "Q>=0"
    assert Cone.from_constraints(2, [(1, 0), (0, 1)]) == Cone.from_rays(2, [(1, 0), (0, 1)])
    assert not Cone.from_rays(2, [(1, 0), (-1, 0)]).is_pointed()


def test_cone_faces():
    cone = Cone.from_rays(2, [(1, 0), (0, 1)])
    assert set(cone.faces()) == {
        Cone.zero(2),
        Cone.from_rays(2, [(1, 0)]),
        Cone.from_rays(2, [(0, 1)]),
        cone,
    }
    assert Cone.from_rays(2, [(1, 0)]).is_face_of(cone)
    assert not Cone.from_rays(2, [(1, 1)]).is_face_of(cone)


def test_is_regular():
    assert is_regular(Cone.from_rays(2, [(1, 1), (0, -1)]))
    assert not is_regular(Cone.from_rays(2, [(1, 0), (1, 2)]))
    # (1, 1) is redundant: the cone is the positive quadrant, which is regular
    assert is_regular(Cone.from_rays(2, [(1, 0), (0, 1), (1, 1)]))
    assert is_regular(Cone.zero(3))
    square_cone = Cone.from_rays(3, [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    assert not is_regular(square_cone)


def test_is_regular_rejects_lines():
    with pytest.raises(RegularityError, match="non-pointed"):
        is_regular(Cone.from_rays(2, [(1, 0), (-1, 0)]))


def test_translates():
    q_ge = Cone.from_rays(1, [(1,)])
    assert lattice_translate_of(Polyhedron.interval(0, None), q_ge) == (0,)
    assert lattice_translate_of(Polyhedron.interval(-1, None), q_ge) == (-1,)
    assert lattice_translate_of(Polyhedron.interval(-half, None), q_ge) is None
    assert translate_of(Polyhedron.interval(-half, None), q_ge) == (-half,)
    assert translate_of(Polyhedron.interval(-1, 0), q_ge) is None
    assert lattice_translate_of(Polyhedron.interval(-1, 0), Cone.zero(1)) is None
    p = Polyhedron.from_generators(2, [(Fraction(1, 3), 2)], [(1, 0)])
    assert translate_of(p, Cone.from_rays(2, [(1, 0)])) == (Fraction(1, 3), 2)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(POINTED_CONES), st.tuples(coordinates, coordinates))
def test_lattice_translate_recovers_shift(sigma, v):
    assert lattice_translate_of(sigma.as_polyhedron().translate(v), sigma) == v
