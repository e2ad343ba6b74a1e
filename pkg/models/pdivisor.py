"""Polyhedral divisors on P^1

A divisor is a formal sum of coefficients D_y over points y of P^1 sharing a
pointed tail cone sigma. Points that are not listed carry sigma itself.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from models.lattice import (
    LatticeVector,
    Number,
    floor_vector,
    format_vector,
    integral_direction,
    vector_add,
    vector_sub,
    zero_vector,
)
from models.polyhedra import (
    EMPTY,
    Coefficient,
    Cone,
    Polyhedron,
    contains,
    intersect,
    is_regular,
    lattice_translate_of,
    minkowski_sum,
    translate_of,
)
from utils.errors import DowngradeFormError, GeometryError, PropernessError

logger = logging.getLogger("tfan")

POINT_KINDS = ("zero", "infinity", "coordinate", "named")


@dataclass(frozen=True)
class PointOnP1:
    """
    A point of P^1, known only by its label

    Coordinates are labels too; no arithmetic on P^1 is ever done.
    """

    kind: str
    coordinate: Fraction = Fraction(0)
    name: str = ""

    def __post_init__(self) -> None:
        if self.kind not in POINT_KINDS:
            raise GeometryError(f"unknown point kind '{self.kind}'")

    @classmethod
    def at(cls, value: Number) -> "PointOnP1":
        q = Fraction(value)
        if q == 0:
            return ZERO
        return cls("coordinate", coordinate=q)

    @classmethod
    def named(cls, name: str) -> "PointOnP1":
        if not name or name in ("0", "inf") or name.startswith("@"):
            raise GeometryError(f"'{name}' cannot be used as a point name")
        return cls("named", name=name)

    @classmethod
    def parse(cls, label: str) -> "PointOnP1":
        """Inverse of label: "0", "inf", "@p/q" or a name"""
        if label == "0":
            return ZERO
        if label == "inf":
            return INFINITY
        if label.startswith("@"):
            try:
                return cls.at(Fraction(label[1:]))
            except (ValueError, ZeroDivisionError) as e:
                raise GeometryError(f"bad point coordinate '{label}'") from e
        return cls.named(label)

    @property
    def label(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind == "infinity":
            return "inf"
        if self.kind == "coordinate":
            return f"@{self.coordinate}"
        return self.name

    def sort_key(self) -> Tuple[int, Fraction, str]:
        return POINT_KINDS.index(self.kind), self.coordinate, self.name


ZERO = PointOnP1("zero")
INFINITY = PointOnP1("infinity")


def sorted_points(points: Iterable[PointOnP1]) -> Tuple[PointOnP1, ...]:
    return tuple(sorted(set(points), key=PointOnP1.sort_key))


@dataclass(frozen=True)
class PDivisor:
    """
    Polyhedral divisor sum D_y * y with tail cone sigma

    support lists only the coefficients that differ from sigma, sorted by
    point. Use create to build one.
    """

    rank: int
    tail: Cone
    support: Tuple[Tuple[PointOnP1, Coefficient], ...]

    @classmethod
    def create(
        cls, tail: Cone, coefficients: Iterable[Tuple[PointOnP1, Coefficient]] = ()
    ) -> "PDivisor":
        """
        Validate and canonicalize a divisor

        Args:
            tail: pointed tail cone sigma
            coefficients: (point, coefficient) pairs; sigma coefficients are dropped

        Raises:
            GeometryError: non-pointed tail, repeated point, wrong rank or a
                coefficient whose tail cone is not sigma
        """
        if not tail.is_pointed():
            raise GeometryError(f"tail cone {tail.describe()} is not pointed")
        sigma = tail.as_polyhedron()
        seen: Dict[PointOnP1, Coefficient] = {}
        for point, coefficient in coefficients:
            if point in seen:
                raise GeometryError(f"point {point.label} listed twice")
            if isinstance(coefficient, Polyhedron):
                if coefficient.rank != tail.rank:
                    raise GeometryError(
                        f"coefficient at {point.label} has rank {coefficient.rank}, tail has {tail.rank}"
                    )
                if coefficient.tail_rays != tail.rays:
                    raise GeometryError(
                        f"coefficient at {point.label} has tail cone "
                        f"cone{{{', '.join(format_vector(r) for r in coefficient.tail_rays)}}}, "
                        f"not {tail.describe()}"
                    )
            seen[point] = coefficient
        support = tuple(
            (point, seen[point])
            for point in sorted_points(seen)
            if seen[point] != sigma
        )
        return cls(tail.rank, tail, support)

    def coefficient(self, point: PointOnP1) -> Coefficient:
        """D_y; unlisted points carry sigma"""
        for listed, coefficient in self.support:
            if listed == point:
                return coefficient
        return self.tail.as_polyhedron()

    def points(self) -> Tuple[PointOnP1, ...]:
        return tuple(point for point, _ in self.support)

    def describe(self) -> str:
        if not self.support:
            return f"trivial divisor over {self.tail.describe()}"
        return " + ".join(f"{c.describe()}*{p.label}" for p, c in self.support)


@dataclass(frozen=True)
class ClassifiedRay:
    """
    Extremal ray of a downgrade cone with its type

    kind 1 comes from the tail cone, kind 2 from a vertex of D_0, kind 3 from a
    vertex of D_inf.
    """

    kind: int
    ray: LatticeVector


@dataclass(frozen=True)
class AffineSpaceCertificate:
    """
    Proof that X(D) is an affine space: a regular full-dimensional downgrade cone
    """

    the_cone: Cone
    y0: PointOnP1
    y_inf: PointOnP1
    w0: LatticeVector
    w_inf: LatticeVector
    v: LatticeVector
    regular: bool
    full_dimensional: bool

    @property
    def valid(self) -> bool:
        return self.regular and self.full_dimensional and vector_add(self.w0, self.w_inf) == self.v


def degree(d: PDivisor) -> Coefficient:
    """Minkowski sum of all coefficients; EMPTY if one of them is empty"""
    total: Coefficient = d.tail.as_polyhedron()
    for _, coefficient in d.support:
        total = minkowski_sum(total, coefficient)
        if total is EMPTY:
            break
    return total


def is_proper(d: PDivisor) -> bool:
    """deg D is empty or a proper subset of sigma"""
    deg = degree(d)
    if not isinstance(deg, Polyhedron):
        return True
    sigma = d.tail.as_polyhedron()
    return contains(sigma, deg) and deg != sigma


def lattice_translate_profile(d: PDivisor) -> Dict[PointOnP1, Optional[LatticeVector]]:
    """v_y for every listed point, None where D_y is empty or not a lattice translate"""
    profile: Dict[PointOnP1, Optional[LatticeVector]] = {}
    for point, coefficient in d.support:
        if isinstance(coefficient, Polyhedron):
            profile[point] = lattice_translate_of(coefficient, d.tail)
        else:
            profile[point] = None
    return profile


def special_points(d: PDivisor) -> Tuple[PointOnP1, ...]:
    """Points whose coefficient is empty or not a lattice translate of sigma"""
    return tuple(point for point, v in lattice_translate_profile(d).items() if v is None)


def candidate_pairs(d: PDivisor) -> List[Tuple[PointOnP1, PointOnP1]]:
    """
    Choices of (y0, y_inf) that can put d into downgrade form

    The special points must be among them. Moving a lattice translate into
    y0 or y_inf, or swapping the two, changes the downgrade cone by a lattice
    automorphism, so one pair is enough when there are at most two specials.
    """
    specials = special_points(d)
    if len(specials) > 2:
        return []
    if len(specials) == 2:
        return [(specials[0], specials[1])]
    if not specials:
        return [(ZERO, INFINITY)]
    fillers = [ZERO, INFINITY, *d.points(), PointOnP1.named("generic")]
    partner = next(point for point in fillers if point != specials[0])
    first, second = sorted((specials[0], partner), key=PointOnP1.sort_key)
    return [(first, second)]


def translate_sum(d: PDivisor, y0: PointOnP1, y_inf: PointOnP1) -> LatticeVector:
    """
    v = sum of v_y over the points other than y0 and y_inf

    Raises:
        DowngradeFormError: if one of those coefficients is not a lattice translate
    """
    total = zero_vector(d.rank)
    for point, v in lattice_translate_profile(d).items():
        if point in (y0, y_inf):
            continue
        if v is None:
            raise DowngradeFormError(
                f"divisor not of downgrade form: coefficient at {point.label} "
                f"is not a lattice translate of the tail cone"
            )
        total = tuple(int(x) for x in vector_add(total, v))
    return total


def default_w0(d: PDivisor, y0: PointOnP1, y_inf: PointOnP1) -> LatticeVector:
    """
    Zero when v = 0 or D_0 is empty, otherwise minus the floor of the
    barycenter of the vertices of D_0
    """
    v = translate_sum(d, y0, y_inf)
    d0 = d.coefficient(y0)
    if not any(v) or not isinstance(d0, Polyhedron):
        return zero_vector(d.rank)
    count = len(d0.vertices)
    barycenter = [sum(vertex[i] for vertex in d0.vertices) / count for i in range(d.rank)]
    return tuple(-x for x in floor_vector(barycenter))


def _lift(point: Sequence[Number], height: int) -> LatticeVector:
    return integral_direction(tuple(point) + (height,))


def _downgrade_generators(
    d: PDivisor, y0: PointOnP1, y_inf: PointOnP1, w0: Optional[Sequence[int]]
) -> Tuple[List[LatticeVector], List[LatticeVector], List[LatticeVector]]:
    if y0 == y_inf:
        raise GeometryError("y0 and y_inf must be different points")
    v = translate_sum(d, y0, y_inf)
    shift0 = tuple(w0) if w0 is not None else default_w0(d, y0, y_inf)
    if len(shift0) != d.rank:
        raise GeometryError(f"w0 must have length {d.rank}")
    shift_inf = vector_sub(v, shift0)

    lower: List[LatticeVector] = []
    upper: List[LatticeVector] = []
    d0, d_inf = d.coefficient(y0), d.coefficient(y_inf)
    if isinstance(d0, Polyhedron):
        upper = [_lift(vector_add(shift0, vertex), 1) for vertex in d0.vertices]
    if isinstance(d_inf, Polyhedron):
        lower = [_lift(vector_add(shift_inf, vertex), -1) for vertex in d_inf.vertices]
    middle = [tuple(ray) + (0,) for ray in d.tail.rays]
    return middle, upper, lower


def downgrade_cone(
    d: PDivisor, y0: PointOnP1, y_inf: PointOnP1, w0: Optional[Sequence[int]] = None
) -> Cone:
    """
    Cone in N + Z generated by (w0 + D_0) x 1, sigma x 0 and (w_inf + D_inf) x -1

    w_inf = v - w0 where v sums the lattice translates at all other points.
    The result may contain a line for degenerate input; is_regular flags it.
    """
    middle, upper, lower = _downgrade_generators(d, y0, y_inf, w0)
    return Cone.from_rays(d.rank + 1, middle + upper + lower)


def extremal_rays(
    d: PDivisor, y0: PointOnP1, y_inf: PointOnP1, w0: Optional[Sequence[int]] = None
) -> Tuple[ClassifiedRay, ...]:
    """
    Extremal rays of the downgrade cone, classified by origin

    Tail rays rho survive iff deg D meets cone(rho) nowhere; every vertex of
    D_0 and D_inf lifts to an extremal ray. This holds for p-divisors.
    """
    middle, upper, lower = _downgrade_generators(d, y0, y_inf, w0)
    deg = degree(d)
    classified: List[ClassifiedRay] = []
    for ray, lifted in zip(d.tail.rays, middle):
        if intersect(deg, Cone.from_rays(d.rank, [ray]).as_polyhedron()) is EMPTY:
            classified.append(ClassifiedRay(1, lifted))
    classified += [ClassifiedRay(2, ray) for ray in sorted(set(upper))]
    classified += [ClassifiedRay(3, ray) for ray in sorted(set(lower))]
    return tuple(classified)


def _require_proper(d: PDivisor) -> None:
    if not is_proper(d):
        raise PropernessError(f"smoothness test requires a p-divisor: {d.describe()}")


def _empty_degree_cone(d: PDivisor, coefficient: Polyhedron) -> Cone:
    # cone over (D_y x 1) and sigma x 0
    rays = [_lift(vertex, 1) for vertex in coefficient.vertices]
    rays += [tuple(ray) + (0,) for ray in d.tail.rays]
    return Cone.from_rays(d.rank + 1, rays)


def is_smooth(d: PDivisor) -> bool:
    """
    Whether X(D) is smooth

    Raises:
        PropernessError: if d is not a p-divisor
        RegularityError: if the downgrade cone contains a line
    """
    _require_proper(d)
    if isinstance(degree(d), Polyhedron):
        pairs = candidate_pairs(d)
        if not pairs:
            logger.debug(f"more than two special points in {d.describe()}")
            return False
        y0, y_inf = pairs[0]
        return is_regular(downgrade_cone(d, y0, y_inf))

    if not is_regular(d.tail):
        return False
    for point, coefficient in d.support:
        if isinstance(coefficient, Polyhedron) and not is_regular(_empty_degree_cone(d, coefficient)):
            logger.debug(f"cone over the coefficient at {point.label} is not regular")
            return False
    return True


def is_affine_space(d: PDivisor) -> Optional[AffineSpaceCertificate]:
    """
    Certify X(D) as an affine space, if the downgrade cone allows it

    Only proves: None means no certificate was found, not that X(D) is not
    an affine space.

    Raises:
        PropernessError: if d is not a p-divisor
    """
    _require_proper(d)
    for y0, y_inf in candidate_pairs(d):
        try:
            v = translate_sum(d, y0, y_inf)
        except DowngradeFormError:
            continue
        w0 = default_w0(d, y0, y_inf)
        cone = downgrade_cone(d, y0, y_inf, w0)
        if not cone.is_pointed():
            continue
        full = cone.dimension == d.rank + 1
        if full and is_regular(cone):
            w_inf = tuple(int(x) for x in vector_sub(v, w0))
            return AffineSpaceCertificate(cone, y0, y_inf, w0, w_inf, v, True, True)
    return None


def certificate_problems(d: PDivisor, certificate: AffineSpaceCertificate) -> List[str]:
    """Recompute a certificate from d and list every mismatch"""
    problems: List[str] = []
    if not certificate.regular or not certificate.full_dimensional:
        problems.append("certificate does not claim a regular full-dimensional cone")
    if vector_add(certificate.w0, certificate.w_inf) != certificate.v:
        problems.append(
            f"w0 + w_inf = {format_vector(vector_add(certificate.w0, certificate.w_inf))} "
            f"differs from v = {format_vector(certificate.v)}"
        )
    try:
        v = translate_sum(d, certificate.y0, certificate.y_inf)
        cone = downgrade_cone(d, certificate.y0, certificate.y_inf, certificate.w0)
    except (DowngradeFormError, GeometryError) as e:
        problems.append(str(e))
        return problems
    if v != certificate.v:
        problems.append(f"v is {format_vector(v)}, certificate says {format_vector(certificate.v)}")
    if cone != certificate.the_cone:
        problems.append(
            f"downgrade cone is {cone.describe()}, certificate says {certificate.the_cone.describe()}"
        )
    if not certificate.the_cone.is_pointed():
        problems.append("certified cone is not pointed")
    else:
        if certificate.the_cone.dimension != d.rank + 1:
            problems.append(f"certified cone has dimension {certificate.the_cone.dimension}")
        if not is_regular(certificate.the_cone):
            problems.append(f"certified cone {certificate.the_cone.describe()} is not regular")
    return problems


def intersection(d: PDivisor, other: PDivisor) -> PDivisor:
    """Coefficientwise intersection, tail sigma ∩ sigma'"""
    if d.rank != other.rank:
        raise GeometryError(f"divisors of rank {d.rank} and {other.rank}")
    tail = d.tail.intersection(other.tail)
    points = sorted_points(d.points() + other.points())
    return PDivisor.create(
        tail,
        [(point, intersect(d.coefficient(point), other.coefficient(point))) for point in points],
    )


def translate_obstructions(d: PDivisor) -> List[str]:
    """
    Necessary conditions for smoothness that follow from the tail cone alone

    An empty list for every smooth p-divisor.
    """
    problems: List[str] = []
    deg = degree(d)
    sigma = d.tail
    maximal = sigma.dimension == d.rank

    if isinstance(deg, Polyhedron):
        if not maximal:
            return problems
        facets = [face for face in sigma.faces() if face.dimension == d.rank - 1]
        missed = [tau for tau in facets if intersect(deg, tau.as_polyhedron()) is EMPTY]
        if not missed:
            return problems
        non_lattice = []
        for point, coefficient in d.support:
            if not isinstance(coefficient, Polyhedron) or translate_of(coefficient, sigma) is None:
                problems.append(
                    f"degree misses facet {missed[0].describe()} but the coefficient at "
                    f"{point.label} is not a translate of the tail cone"
                )
            elif lattice_translate_of(coefficient, sigma) is None:
                non_lattice.append(point.label)
        if len(non_lattice) > 2:
            problems.append(
                f"degree misses facet {missed[0].describe()} but {len(non_lattice)} coefficients "
                f"are non-lattice translates ({', '.join(non_lattice)})"
            )
        return problems

    if not is_regular(sigma):
        problems.append(f"degree is empty but the tail cone {sigma.describe()} is not regular")
    if maximal:
        for point, coefficient in d.support:
            if isinstance(coefficient, Polyhedron) and lattice_translate_of(coefficient, sigma) is None:
                problems.append(
                    f"degree is empty and the tail cone is maximal, but the coefficient at "
                    f"{point.label} is neither empty nor a lattice translate"
                )
    return problems
