"""Exact rational polyhedra and cones in N_Q

The primary representation is the V-description (vertices plus primitive tail
rays), kept canonical: vertices are exactly the vertices of the polyhedron,
sorted, and rays are the primitive extremal rays, sorted. Equality of two
polyhedra is equality of these tuples. The H-description is computed once at
construction through api.cdd and stored alongside.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, List, Optional, Sequence, Set, Tuple, Union

from api import cdd
from models.lattice import (
    LatticeVector,
    Number,
    RationalVector,
    as_rational,
    dot,
    extends_to_basis,
    format_vector,
    integral_direction,
    is_integral,
    rank as span_rank,
)
from utils.errors import GeometryError, RegularityError

logger = logging.getLogger("tfan")

# (normal, offset) with normal primitive and integral, meaning normal.x >= offset
Inequality = Tuple[LatticeVector, Fraction]

# indices into the vertices and tail rays of a canonical polyhedron
FaceIds = Tuple[FrozenSet[int], FrozenSet[int]]


def _normalize_row(row: cdd.Row) -> Inequality:
    """cdd row (c, a) for c + a.x >= 0, as (a', b) with a' primitive and a'.x >= b"""
    normal = row[1:]
    scale = Fraction(math.lcm(*(x.denominator for x in normal)))
    scaled = [int(x * scale) for x in normal]
    g = math.gcd(*scaled)
    factor = scale / g
    return tuple(x // g for x in scaled), -row[0] * factor


def _normalize_equation(row: cdd.Row) -> Inequality:
    normal, offset = _normalize_row(row)
    leading = next(x for x in normal if x != 0)
    if leading < 0:
        return tuple(-x for x in normal), -offset
    return normal, offset


def _to_row(normal: Sequence[Number], offset: Number) -> cdd.Row:
    return (-Fraction(offset),) + as_rational(normal)


def _dimension(rank: int, equations: Sequence[Inequality]) -> int:
    return rank - span_rank([normal for normal, _ in equations])


@dataclass(frozen=True)
class EmptySet:
    """
    The empty coefficient; never a polyhedron with zero vertices
    """

    def describe(self) -> str:
        return "empty"


EMPTY = EmptySet()


@dataclass(frozen=True)
class Polyhedron:
    """
    Nonempty pointed rational polyhedron conv(vertices) + cone(tail_rays)

    Build instances with from_generators, from_inequalities, interval or
    point; the constructors guarantee the canonical form equality relies on.
    """

    rank: int
    vertices: Tuple[RationalVector, ...]
    tail_rays: Tuple[LatticeVector, ...]
    inequalities: Tuple[Inequality, ...] = field(default=(), compare=False, repr=False)
    equations: Tuple[Inequality, ...] = field(default=(), compare=False, repr=False)
    dimension: int = field(default=0, compare=False, repr=False)

    @classmethod
    def from_generators(
        cls,
        rank: int,
        vertices: Sequence[Sequence[Number]],
        rays: Sequence[Sequence[Number]] = (),
    ) -> "Polyhedron":
        """
        Canonical polyhedron conv(vertices) + cone(rays)

        Raises:
            GeometryError: no vertices, wrong lengths or a tail with a line
        """
        if not vertices:
            raise GeometryError("a polyhedron needs at least one vertex")
        points = tuple(as_rational(v) for v in vertices)
        directions = tuple(as_rational(r) for r in rays if any(r))
        if any(len(v) != rank for v in points + directions):
            raise GeometryError(f"generator of the wrong length for rank {rank}")
        constraints = cdd.to_constraints(points, directions)
        generators = cdd.to_generators(constraints.inequalities, constraints.equations, rank)
        if generators.lines:
            raise GeometryError("tail cone is not pointed")
        return cls._assemble(rank, generators.vertices, generators.rays, constraints)

    @classmethod
    def _assemble(
        cls,
        rank: int,
        vertices: Sequence[RationalVector],
        rays: Sequence[Sequence[Fraction]],
        constraints: cdd.Constraints,
    ) -> "Polyhedron":
        equations = tuple(sorted(_normalize_equation(row) for row in constraints.equations))
        return cls(
            rank,
            tuple(sorted(set(vertices))),
            tuple(sorted({integral_direction(r) for r in rays})),
            tuple(sorted(_normalize_row(row) for row in constraints.inequalities)),
            equations,
            _dimension(rank, equations),
        )

    @classmethod
    def _from_canonical(
        cls, rank: int, vertices: Sequence[RationalVector], rays: Sequence[LatticeVector]
    ) -> "Polyhedron":
        # vertices and rays are already the minimal generators (faces of a canonical polyhedron)
        points = tuple(vertices)
        directions = tuple(as_rational(r) for r in rays)
        return cls._assemble(rank, points, directions, cdd.to_constraints(points, directions))

    @classmethod
    def from_inequalities(
        cls,
        rank: int,
        inequalities: Sequence[Tuple[Sequence[Number], Number]],
        equations: Sequence[Tuple[Sequence[Number], Number]] = (),
    ) -> Union["Polyhedron", EmptySet]:
        """
        Polyhedron {x : a.x >= b for (a, b) in inequalities, a.x = b for equations}

        Returns:
            The canonical polyhedron, or EMPTY if the system is infeasible
        """
        generators = vertex_rows(rank, inequalities, equations)
        if not generators.vertices:
            return EMPTY
        if generators.lines:
            raise GeometryError("tail cone is not pointed")
        return cls.from_generators(rank, generators.vertices, generators.rays)

    @classmethod
    def point(cls, v: Sequence[Number]) -> "Polyhedron":
        return cls.from_generators(len(v), [v])

    @classmethod
    def interval(cls, lo: Optional[Number], hi: Optional[Number]) -> "Polyhedron":
        """Rank one polyhedron [lo, hi]; None stands for an infinite end"""
        if lo is None and hi is None:
            raise GeometryError("the whole line is not pointed")
        if lo is None:
            return cls.from_generators(1, [(hi,)], [(-1,)])
        if hi is None:
            return cls.from_generators(1, [(lo,)], [(1,)])
        if Fraction(lo) > Fraction(hi):
            raise GeometryError(f"empty interval [{lo}, {hi}]")
        return cls.from_generators(1, [(lo,), (hi,)])

    def translate(self, v: Sequence[Number]) -> "Polyhedron":
        shift = as_rational(v)
        return Polyhedron._from_canonical(
            self.rank,
            tuple(tuple(a + b for a, b in zip(vertex, shift)) for vertex in self.vertices),
            self.tail_rays,
        )

    def contains_point(self, x: Sequence[Number]) -> bool:
        return all(dot(a, x) >= b for a, b in self.inequalities) and all(
            dot(a, x) == b for a, b in self.equations
        )

    def sort_key(self) -> Tuple[Tuple[RationalVector, ...], Tuple[LatticeVector, ...]]:
        return self.vertices, self.tail_rays

    def describe(self) -> str:
        if self.rank == 1:
            return _describe_interval(self)
        text = "conv{" + ", ".join(format_vector(v) for v in self.vertices) + "}"
        if self.tail_rays:
            text += " + cone{" + ", ".join(format_vector(r) for r in self.tail_rays) + "}"
        return text


Coefficient = Union[Polyhedron, EmptySet]


def _describe_interval(p: Polyhedron) -> str:
    lo, hi = p.vertices[0][0], p.vertices[-1][0]
    if p.tail_rays == ((1,),):
        return f"[{lo}, inf)"
    if p.tail_rays == ((-1,),):
        return f"(-inf, {hi}]"
    if lo == hi:
        return f"{{{lo}}}"
    return f"[{lo}, {hi}]"


def vertex_rows(
    rank: int,
    inequalities: Sequence[Tuple[Sequence[Number], Number]],
    equations: Sequence[Tuple[Sequence[Number], Number]] = (),
) -> cdd.Generators:
    for normal, _ in list(inequalities) + list(equations):
        if len(normal) != rank:
            raise GeometryError(f"constraint of the wrong length for rank {rank}")
    return cdd.to_generators(
        tuple(_to_row(a, b) for a, b in inequalities),
        tuple(_to_row(a, b) for a, b in equations),
        rank,
    )


@dataclass(frozen=True)
class Cone:
    """
    Rational polyhedral cone with its ray and facet descriptions

    Tail cones are pointed; lines only appear on downgrade cones, where they
    signal a degenerate input.
    """

    rank: int
    rays: Tuple[LatticeVector, ...]
    lines: Tuple[LatticeVector, ...] = ()
    facet_normals: Tuple[LatticeVector, ...] = field(default=(), compare=False, repr=False)
    equations: Tuple[LatticeVector, ...] = field(default=(), compare=False, repr=False)
    dimension: int = field(default=0, compare=False, repr=False)

    @classmethod
    def from_rays(cls, rank: int, rays: Sequence[Sequence[Number]]) -> "Cone":
        """Cone generated by the given vectors; zero vectors are ignored"""
        directions = tuple(as_rational(r) for r in rays if any(r))
        if any(len(r) != rank for r in directions):
            raise GeometryError(f"ray of the wrong length for rank {rank}")
        constraints = cdd.to_constraints(((Fraction(0),) * rank,), directions)
        return cls._from_constraint_rows(rank, constraints)

    @classmethod
    def from_constraints(
        cls,
        rank: int,
        normals: Sequence[Sequence[Number]],
        equations: Sequence[Sequence[Number]] = (),
    ) -> "Cone":
        """Cone {x : a.x >= 0 for a in normals, a.x = 0 for a in equations}"""
        generators = vertex_rows(rank, [(a, 0) for a in normals], [(a, 0) for a in equations])
        lines = tuple(sorted({integral_direction(line) for line in generators.lines}))
        constraints = cdd.to_constraints(
            ((Fraction(0),) * rank,),
            generators.rays,
            tuple(as_rational(line) for line in lines),
        )
        return cls._from_constraint_rows(rank, constraints)

    @classmethod
    def _from_constraint_rows(cls, rank: int, constraints: cdd.Constraints) -> "Cone":
        generators = cdd.to_generators(constraints.inequalities, constraints.equations, rank)
        equations = tuple(sorted(_normalize_equation(row) for row in constraints.equations))
        return cls(
            rank,
            tuple(sorted({integral_direction(r) for r in generators.rays})),
            tuple(sorted({_line_direction(line) for line in generators.lines})),
            tuple(sorted(_normalize_row(row)[0] for row in constraints.inequalities)),
            tuple(normal for normal, _ in equations),
            _dimension(rank, equations),
        )

    @classmethod
    def zero(cls, rank: int) -> "Cone":
        return cls.from_rays(rank, [])

    def is_pointed(self) -> bool:
        return not self.lines

    def contains(self, v: Sequence[Number]) -> bool:
        return all(dot(a, v) >= 0 for a in self.facet_normals) and all(
            dot(a, v) == 0 for a in self.equations
        )

    def as_polyhedron(self) -> Polyhedron:
        if not self.is_pointed():
            raise GeometryError("a non-pointed cone is not a tail cone")
        return Polyhedron._from_canonical(self.rank, ((Fraction(0),) * self.rank,), self.rays)

    def intersection(self, other: "Cone") -> "Cone":
        if self.rank != other.rank:
            raise GeometryError("cones of different rank")
        return Cone.from_constraints(
            self.rank,
            self.facet_normals + other.facet_normals,
            self.equations + other.equations,
        )

    def faces(self) -> Tuple["Cone", ...]:
        return tuple(Cone.from_rays(self.rank, face.tail_rays) for face in faces(self.as_polyhedron()))

    def is_face_of(self, other: "Cone") -> bool:
        return self.is_pointed() and other.is_pointed() and is_face(self.as_polyhedron(), other.as_polyhedron())

    def sort_key(self) -> Tuple[Tuple[LatticeVector, ...], Tuple[LatticeVector, ...]]:
        return self.rays, self.lines

    def describe(self) -> str:
        if self.rank == 1 and not self.lines:
            return {(): "{0}", ((1,),): "Q>=0", ((-1,),): "Q<=0"}[self.rays]
        parts = [format_vector(r) for r in self.rays]
        parts += [f"±{format_vector(line)}" for line in self.lines]
        return "cone{" + ", ".join(parts) + "}"


def _line_direction(line: Sequence[Fraction]) -> LatticeVector:
    direction = integral_direction(line)
    leading = next(x for x in direction if x != 0)
    return direction if leading > 0 else tuple(-x for x in direction)


def tail_cone(p: Polyhedron) -> Cone:
    """Recession cone of p"""
    return Cone.from_rays(p.rank, p.tail_rays)


def _check_ranks(p: Coefficient, q: Coefficient) -> None:
    if isinstance(p, Polyhedron) and isinstance(q, Polyhedron) and p.rank != q.rank:
        raise GeometryError(f"polyhedra of rank {p.rank} and {q.rank}")


def minkowski_sum(p: Coefficient, q: Coefficient) -> Coefficient:
    """p + q; the empty set absorbs"""
    _check_ranks(p, q)
    if not isinstance(p, Polyhedron) or not isinstance(q, Polyhedron):
        return EMPTY
    vertices = [tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices]
    return Polyhedron.from_generators(p.rank, vertices, p.tail_rays + q.tail_rays)


def intersect(p: Coefficient, q: Coefficient) -> Coefficient:
    """Exact intersection; EMPTY when disjoint"""
    _check_ranks(p, q)
    if not isinstance(p, Polyhedron) or not isinstance(q, Polyhedron):
        return EMPTY
    return Polyhedron.from_inequalities(
        p.rank, p.inequalities + q.inequalities, p.equations + q.equations
    )


def restrict(
    p: Polyhedron,
    inequalities: Sequence[Tuple[Sequence[Number], Number]],
    equations: Sequence[Tuple[Sequence[Number], Number]] = (),
) -> Coefficient:
    """p cut by extra constraints a.x >= b (and a.x = b)"""
    return Polyhedron.from_inequalities(
        p.rank,
        list(p.inequalities) + list(inequalities),
        list(p.equations) + list(equations),
    )


def dual_description(p: Polyhedron) -> Tuple[Inequality, ...]:
    """
    Irredundant inequalities a.x >= b describing p

    Each equation a.x = b of the affine hull appears as the pair a.x >= b and
    -a.x >= -b.
    """
    paired = []
    for normal, offset in p.equations:
        paired.append((normal, offset))
        paired.append((tuple(-x for x in normal), -offset))
    return p.inequalities + tuple(paired)


def vertex_enumeration(rank: int, inequalities: Sequence[Tuple[Sequence[Number], Number]]) -> Coefficient:
    """Inverse of dual_description"""
    return Polyhedron.from_inequalities(rank, inequalities)


@lru_cache(maxsize=8192)
def faces(p: Polyhedron) -> Tuple[Polyhedron, ...]:
    """
    All nonempty faces of p, p itself included

    Every nonempty face of a pointed polyhedron contains a vertex, so faces are
    found as the vertex and ray subsets tight on sets of facet inequalities.
    Sorted by dimension, then canonical form.
    """
    tight: List[FaceIds] = []
    for normal, offset in p.inequalities:
        tight.append(
            (
                frozenset(i for i, v in enumerate(p.vertices) if dot(normal, v) == offset),
                frozenset(j for j, r in enumerate(p.tail_rays) if dot(normal, r) == 0),
            )
        )
    whole: FaceIds = (frozenset(range(len(p.vertices))), frozenset(range(len(p.tail_rays))))
    seen: Set[FaceIds] = {whole}
    queue = deque([whole])
    while queue:
        vertex_ids, ray_ids = queue.popleft()
        for tight_vertices, tight_rays in tight:
            face = (vertex_ids & tight_vertices, ray_ids & tight_rays)
            if face[0] and face not in seen:
                seen.add(face)
                queue.append(face)

    result = [p]
    for vertex_ids, ray_ids in seen:
        if (vertex_ids, ray_ids) == whole:
            continue
        result.append(
            Polyhedron._from_canonical(
                p.rank,
                tuple(p.vertices[i] for i in sorted(vertex_ids)),
                tuple(p.tail_rays[j] for j in sorted(ray_ids)),
            )
        )
    return tuple(sorted(result, key=lambda face: (face.dimension, face.sort_key())))


def facets(p: Polyhedron) -> Tuple[Polyhedron, ...]:
    return tuple(face for face in faces(p) if face.dimension == p.dimension - 1)


def is_face(f: Coefficient, p: Polyhedron) -> bool:
    """Whether f is a face of p; p itself and the empty set count"""
    if not isinstance(f, Polyhedron):
        return True
    if f.rank != p.rank:
        raise GeometryError(f"polyhedra of rank {f.rank} and {p.rank}")
    return f in faces(p)


def contains(outer: Coefficient, inner: Coefficient) -> bool:
    """Whether inner is a subset of outer"""
    if not isinstance(inner, Polyhedron):
        return True
    if not isinstance(outer, Polyhedron):
        return False
    return all(outer.contains_point(v) for v in inner.vertices) and all(
        all(dot(a, r) >= 0 for a, _ in outer.inequalities)
        and all(dot(a, r) == 0 for a, _ in outer.equations)
        for r in inner.tail_rays
    )


def is_regular(cone: Cone) -> bool:
    """
    Whether the primitive rays of a pointed cone extend to a lattice basis

    Raises:
        RegularityError: if the cone contains a line
    """
    if not cone.is_pointed():
        raise RegularityError("regularity undefined for non-pointed cone")
    if not cone.rays:
        return True
    if span_rank(cone.rays) != len(cone.rays):
        return False
    return extends_to_basis(cone.rays)


def translate_of(p: Polyhedron, sigma: Cone) -> Optional[RationalVector]:
    """v with p = v + sigma, or None"""
    if p.rank != sigma.rank:
        raise GeometryError(f"polyhedron of rank {p.rank} against cone of rank {sigma.rank}")
    if len(p.vertices) != 1 or p.tail_rays != sigma.rays or sigma.lines:
        return None
    return p.vertices[0]


def lattice_translate_of(p: Polyhedron, sigma: Cone) -> Optional[LatticeVector]:
    """v in N with p = v + sigma, or None"""
    v = translate_of(p, sigma)
    if v is None or not is_integral(v):
        return None
    return tuple(int(x) for x in v)
