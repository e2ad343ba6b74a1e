"""Complete toric fans and their downgrade to divisorial fans on P^1"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from models.divfan import DivisorialFan, subdivision_violations
from models.lattice import LatticeVector, format_vector, primitive
from models.pdivisor import INFINITY, ZERO, PDivisor
from models.polyhedra import Cone, Polyhedron, facets, is_regular
from utils.errors import FanError

logger = logging.getLogger("tfan")


@dataclass(frozen=True)
class ToricFan:
    """
    Fan of pointed cones in Q^rank, given by primitive rays and maximal cones

    Each maximal cone is a sorted tuple of indices into rays.
    """

    rank: int
    rays: Tuple[LatticeVector, ...]
    cones: Tuple[Tuple[int, ...], ...]

    @classmethod
    def create(
        cls, rank: int, rays: Sequence[Sequence[int]], cones: Sequence[Sequence[int]]
    ) -> "ToricFan":
        """
        Raises:
            FanError: wrong ray lengths, zero rays or out-of-range indices
        """
        if rank < 2:
            raise FanError("a toric fan to downgrade needs rank at least 2")
        normalized = []
        for ray in rays:
            if len(ray) != rank:
                raise FanError(f"ray {format_vector(ray)} does not have length {rank}")
            if not any(ray):
                raise FanError("zero ray")
            normalized.append(primitive(ray))
        index_sets = []
        for cone in cones:
            if not cone or any(i < 0 or i >= len(normalized) for i in cone):
                raise FanError(f"cone {list(cone)} refers to unknown rays")
            index_sets.append(tuple(sorted(set(cone))))
        return cls(rank, tuple(normalized), tuple(sorted(set(index_sets))))

    def cone(self, index: int) -> Cone:
        return Cone.from_rays(self.rank, [self.rays[i] for i in self.cones[index]])

    def maximal_cones(self) -> Tuple[Cone, ...]:
        return tuple(self.cone(i) for i in range(len(self.cones)))


def face_fan(rays: Sequence[Sequence[int]]) -> ToricFan:
    """
    The complete fan over the facets of conv(rays)

    Raises:
        FanError: if the origin is not an interior point of conv(rays)
    """
    if not rays:
        raise FanError("no rays")
    rank = len(rays[0])
    normalized = sorted({primitive(ray) for ray in rays if any(ray)})
    hull = Polyhedron.from_generators(rank, normalized)
    if hull.dimension != rank or any(offset >= 0 for _, offset in hull.inequalities):
        raise FanError("the origin is not an interior point of the convex hull of the rays")
    cones = []
    for facet in facets(hull):
        on_facet = tuple(i for i, ray in enumerate(normalized) if facet.contains_point(ray))
        cones.append(on_facet)
    return ToricFan.create(rank, normalized, cones)


def check_complete(fan: ToricFan) -> List[str]:
    """Violations of the fan and completeness conditions, empty if complete"""
    problems = []
    cones = fan.maximal_cones()
    for index, cone in enumerate(cones):
        if not cone.is_pointed():
            problems.append(f"cone {index} is not pointed")
    if problems:
        return problems
    return [message for _, message in subdivision_violations([c.as_polyhedron() for c in cones], fan.rank)]


def is_smooth_toric(fan: ToricFan) -> bool:
    """Every maximal cone is regular"""
    return all(is_regular(cone) for cone in fan.maximal_cones())


def _height_slice(cone: Cone, height_index: int, height: int) -> Tuple[List[Tuple[LatticeVector, int]], List[Tuple[LatticeVector, int]]]:
    # a.(x, h) >= 0 becomes a_x.x >= -a_h * h on the slice at height h
    def cut(normal: LatticeVector) -> Tuple[LatticeVector, int]:
        rest = normal[:height_index] + normal[height_index + 1:]
        return rest, -normal[height_index] * height

    return [cut(a) for a in cone.facet_normals], [cut(a) for a in cone.equations]


def toric_downgrade(fan: ToricFan, height_index: int = -1) -> DivisorialFan:
    """
    Divisorial fan of the toric variety of fan with the action of the kernel
    of one coordinate projection

    For every maximal cone delta: D_0 is delta at height 1, D_inf is delta at
    height -1 and the tail is delta at height 0, N being the remaining
    coordinates in order.

    Raises:
        FanError: if fan is not complete
    """
    problems = check_complete(fan)
    if problems:
        raise FanError("toric fan is not complete: " + "; ".join(problems))
    index = height_index % fan.rank
    rank = fan.rank - 1
    members = []
    for delta in fan.maximal_cones():
        normals, equations = _height_slice(delta, index, 0)
        tail = Cone.from_constraints(rank, [a for a, _ in normals], [a for a, _ in equations])
        coefficients = []
        for point, height in ((ZERO, 1), (INFINITY, -1)):
            inequalities, eqs = _height_slice(delta, index, height)
            coefficients.append((point, Polyhedron.from_inequalities(rank, inequalities, eqs)))
        members.append(PDivisor.create(tail, coefficients))
        logger.debug(f"Downgraded {delta.describe()} to {members[-1].describe()}")
    return DivisorialFan.create(members)
