"""Divisorial fans on P^1: slices, tail fan, markings and fan-level smoothness"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from models.pdivisor import (
    INFINITY,
    ZERO,
    PDivisor,
    PointOnP1,
    degree,
    intersection,
    is_proper,
    is_smooth,
    sorted_points,
    translate_obstructions,
)
from models.polyhedra import (
    EMPTY,
    Cone,
    Polyhedron,
    contains,
    faces,
    facets,
    intersect,
    is_face,
    is_regular,
    lattice_translate_of,
)
from utils.errors import FanError, SliceRuleError, TFanError
from utils.parallel import parallel_map
from utils.reports import Report

logger = logging.getLogger("tfan")


@dataclass(frozen=True)
class DivisorialFan:
    """
    Finite set of p-divisors on P^1 of one rank, kept in input order
    """

    rank: int
    members: Tuple[PDivisor, ...]

    @classmethod
    def create(cls, members: Sequence[PDivisor]) -> "DivisorialFan":
        if not members:
            raise FanError("a divisorial fan needs at least one member")
        ranks = {member.rank for member in members}
        if len(ranks) != 1:
            raise FanError(f"members of different ranks {sorted(ranks)}")
        return cls(members[0].rank, tuple(members))

    @property
    def point_universe(self) -> Tuple[PointOnP1, ...]:
        """Every listed point plus 0 and infinity, sorted"""
        points: List[PointOnP1] = [ZERO, INFINITY]
        for member in self.members:
            points.extend(member.points())
        return sorted_points(points)

    def close_intersections(self) -> "DivisorialFan":
        """Add proper pairwise intersections of members until nothing new appears"""
        members = list(self.members)
        known = set(members)
        changed = True
        while changed:
            changed = False
            for first, second in combinations(list(members), 2):
                meet = intersection(first, second)
                if meet in known or not is_proper(meet):
                    continue
                members.append(meet)
                known.add(meet)
                changed = True
        if len(members) > len(self.members):
            logger.info(f"Closed under intersections: {len(self.members)} -> {len(members)} members")
        return DivisorialFan(self.rank, tuple(members))


@dataclass(frozen=True)
class Slice:
    """
    The polyhedra of all members at one point; at is None for the generic slice
    """

    at: Optional[PointOnP1]
    rank: int
    cells: Tuple[Polyhedron, ...]
    maximal_cells: Tuple[Polyhedron, ...]
    faces: Tuple[Polyhedron, ...]

    @classmethod
    def build(cls, at: Optional[PointOnP1], rank: int, cells: Iterable[Polyhedron]) -> "Slice":
        distinct = tuple(sorted(set(cells), key=Polyhedron.sort_key))
        maximal = tuple(
            cell
            for cell in distinct
            if not any(other != cell and contains(other, cell) for other in distinct)
        )
        closure = {face for cell in distinct for face in faces(cell)}
        return cls(at, rank, distinct, maximal, tuple(sorted(closure, key=Polyhedron.sort_key)))

    @property
    def label(self) -> str:
        return self.at.label if self.at is not None else "generic"


@dataclass(frozen=True)
class TailFan:
    """
    The fan generated by the tail cones of the members, with markings
    """

    rank: int
    cones: Tuple[Cone, ...]
    maximal: Tuple[Cone, ...]
    marked: Tuple[Cone, ...]
    violations: Tuple[Tuple[str, str], ...]

    def is_marked(self, sigma: Cone) -> bool:
        return sigma in self.marked


@lru_cache(maxsize=256)
def _slices(fan: DivisorialFan) -> Tuple[Slice, ...]:
    result = []
    for point in fan.point_universe:
        cells = [
            coefficient
            for coefficient in (member.coefficient(point) for member in fan.members)
            if isinstance(coefficient, Polyhedron)
        ]
        result.append(Slice.build(point, fan.rank, cells))
    return tuple(result)


def slices(fan: DivisorialFan) -> Dict[PointOnP1, Slice]:
    """Slice at every point of the point universe"""
    return {slice_.at: slice_ for slice_ in _slices(fan) if slice_.at is not None}


def generic_slice(fan: DivisorialFan) -> Slice:
    """The slice at every unlisted point: the tail cones"""
    return Slice.build(None, fan.rank, [member.tail.as_polyhedron() for member in fan.members])


def all_slices(fan: DivisorialFan) -> Tuple[Slice, ...]:
    return _slices(fan) + (generic_slice(fan),)


def slice_at(fan: DivisorialFan, point: Optional[PointOnP1]) -> Slice:
    if point is None or point not in fan.point_universe:
        return generic_slice(fan)
    return slices(fan)[point]


def subdivision_violations(cells: Sequence[Polyhedron], rank: int) -> List[Tuple[str, str]]:
    """
    Reasons why cells are not a complete polyhedral subdivision of Q^rank

    Pairwise intersections must be faces of both cells. Completeness is the
    facet pairing criterion: maximal cells are full-dimensional and each of
    their facets lies in exactly two of them.
    """
    violations: List[Tuple[str, str]] = []
    distinct = sorted(set(cells), key=Polyhedron.sort_key)
    if not distinct:
        return [("slice-completeness", "no cells")]

    for first, second in combinations(distinct, 2):
        meet = intersect(first, second)
        if meet is EMPTY:
            continue
        if not is_face(meet, first) or not is_face(meet, second):
            violations.append(
                (
                    "slice-rule",
                    f"{first.describe()} and {second.describe()} meet in "
                    f"{meet.describe()}, which is not a common face",
                )
            )

    maximal = [
        cell for cell in distinct if not any(other != cell and contains(other, cell) for other in distinct)
    ]
    facet_count: Counter[Polyhedron] = Counter()
    for cell in maximal:
        if cell.dimension != rank:
            violations.append(
                ("slice-completeness", f"maximal cell {cell.describe()} has dimension {cell.dimension}")
            )
            continue
        facet_count.update(facets(cell))
    for facet in sorted(facet_count, key=Polyhedron.sort_key):
        count = facet_count[facet]
        if count != 2:
            violations.append(
                (
                    "slice-completeness",
                    f"facet {facet.describe()} lies in {count} maximal cells instead of 2",
                )
            )
    return violations


def check_slice_rule(fan: DivisorialFan) -> Report:
    """Every slice, the generic one included, is a complete subdivision"""
    report = Report("slice-rule")
    for slice_ in all_slices(fan):
        for rule, message in subdivision_violations(slice_.cells, fan.rank):
            report.add(rule, f"slice {slice_.label}", message)
    return report


def check_degree_rule(fan: DivisorialFan) -> Report:
    """tau ∩ deg D = tau ∩ deg D' for every pair, tau = tail D ∩ tail D'"""
    report = Report("degree-rule")
    degrees = [degree(member) for member in fan.members]
    for i, j in combinations(range(len(fan.members)), 2):
        tau = fan.members[i].tail.intersection(fan.members[j].tail).as_polyhedron()
        left, right = intersect(tau, degrees[i]), intersect(tau, degrees[j])
        if left != right:
            report.add(
                "degree-rule",
                f"members {i},{j}",
                f"on {tau.describe()}: {left.describe()} differs from {right.describe()}",
            )
    return report


def check_properness(fan: DivisorialFan) -> Report:
    report = Report("properness")
    for index, member in enumerate(fan.members):
        if not is_proper(member):
            deg = degree(member)
            report.add(
                "properness",
                f"member {index}",
                f"degree {deg.describe()} is not a proper subset of {member.tail.describe()}",
            )
    return report


def is_open_subdivisor(sub: PDivisor, d: PDivisor) -> bool:
    """
    Whether sub defines an open subset of X(d)

    Every sub_y must be a face of d_y, unlisted points included, and
    deg sub = deg d ∩ tail sub.
    """
    if sub.rank != d.rank:
        raise FanError(f"divisors of rank {sub.rank} and {d.rank}")
    if not is_face(sub.tail.as_polyhedron(), d.tail.as_polyhedron()):
        return False
    for point in sorted_points(sub.points() + d.points()):
        target = d.coefficient(point)
        own = sub.coefficient(point)
        if not isinstance(target, Polyhedron):
            if isinstance(own, Polyhedron):
                return False
            continue
        if not is_face(own, target):
            return False
    return degree(sub) == intersect(degree(d), sub.tail.as_polyhedron())


def tail_fan(fan: DivisorialFan) -> TailFan:
    """Tail cones with their faces, maximal cones and markings"""
    tails = sorted({member.tail for member in fan.members}, key=Cone.sort_key)
    closure = sorted({face for tail in tails for face in tail.faces()}, key=Cone.sort_key)
    maximal = [
        tail
        for tail in tails
        if not any(other != tail and contains(other.as_polyhedron(), tail.as_polyhedron()) for other in tails)
    ]
    marked = [
        sigma
        for sigma in maximal
        if any(member.tail == sigma and degree(member) is not EMPTY for member in fan.members)
    ]
    violations = subdivision_violations([tail.as_polyhedron() for tail in tails], fan.rank)
    return TailFan(
        fan.rank,
        tuple(closure),
        tuple(maximal),
        tuple(marked),
        tuple(("tail-fan", message) for _, message in violations),
    )


def marked_cones(fan: DivisorialFan) -> Tuple[Cone, ...]:
    return tail_fan(fan).marked


def slice_cell_for_tail(fan: DivisorialFan, point: Optional[PointOnP1], sigma: Cone) -> Polyhedron:
    """
    The unique maximal cell of the slice at point with tail cone sigma

    Raises:
        SliceRuleError: if there is no such cell or more than one
    """
    slice_ = slice_at(fan, point)
    if slice_.at is None:
        return sigma.as_polyhedron()
    candidates = [cell for cell in slice_.maximal_cells if cell.tail_rays == sigma.rays]
    if len(candidates) != 1:
        raise SliceRuleError(
            f"slice rule violated: slice {slice_.label} has {len(candidates)} cells "
            f"with tail {sigma.describe()}"
        )
    return candidates[0]


def validate(fan: DivisorialFan) -> Report:
    """Properness, slice rule and degree rule together"""
    report = Report("validate")
    report.extend(check_properness(fan))
    report.extend(check_slice_rule(fan))
    if report.rules().count("properness") == 0:
        report.extend(check_degree_rule(fan))
    return report


def _member_problem(member: PDivisor) -> Optional[str]:
    try:
        return None if is_smooth(member) else f"X(D) is singular for {member.describe()}"
    except TFanError as e:
        return str(e)


def is_smooth_fan(fan: DivisorialFan, threads: Optional[int] = None) -> Report:
    """
    Smoothness of the complete T-variety given by fan

    Preconditions (properness, slice and degree rules) failing turn the
    report into an error. Otherwise every member must be smooth and every
    maximal tail cone must satisfy the marked or unmarked translate rules.
    """
    report = Report("smooth")
    preconditions = validate(fan)
    if not preconditions.passed:
        for finding in preconditions.findings:
            report.add_error("precondition", finding.location, f"{finding.rule}: {finding.message}")
        return report

    tails = tail_fan(fan)
    for rule, message in tails.violations:
        report.add(rule, "tail fan", message)

    problems = parallel_map(_member_problem, fan.members, threads)
    for index, problem in enumerate(problems):
        if problem is not None:
            report.add("member-smooth", f"member {index}", problem)
    for index, member in enumerate(fan.members):
        for message in translate_obstructions(member):
            report.add("translate-obstruction", f"member {index}", message)

    named = slices(fan)
    for sigma in tails.maximal:
        location = f"tail {sigma.describe()}"
        non_translates = []
        for point in named:
            try:
                cell = slice_cell_for_tail(fan, point, sigma)
            except SliceRuleError as e:
                report.add("slice-rule", location, str(e))
                continue
            if lattice_translate_of(cell, sigma) is None:
                non_translates.append(f"{cell.describe()} at {point.label}")

        if tails.is_marked(sigma):
            if len(non_translates) > 2:
                report.add(
                    "marked-translates",
                    location,
                    f"{len(non_translates)} slice cells are not lattice translates: "
                    + "; ".join(non_translates),
                )
            continue
        if not is_regular(sigma):
            report.add("unmarked-regular", location, "unmarked maximal cone is not regular")
        for description in non_translates:
            report.add("unmarked-translates", location, f"{description} is not a lattice translate")

    report.payload["summary"] = {
        "members": len(fan.members),
        "maximal_tails": len(tails.maximal),
        "marked": len(tails.marked),
        "findings": len(report.findings),
    }
    return report
