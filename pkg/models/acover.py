"""Constructive A-covering of a smooth complete divisorial fan

Every maximal tail cone yields one chart if it is marked and two if it is
not; every maximal slice cell with a non-maximal tail yields one more. Each
chart is certified as an affine space through its downgrade cone.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from models.divfan import (
    DivisorialFan,
    Slice,
    generic_slice,
    is_smooth_fan,
    slice_at,
    slice_cell_for_tail,
    slices,
    tail_fan,
)
from models.lattice import LatticeVector
from models.pdivisor import (
    INFINITY,
    ZERO,
    AffineSpaceCertificate,
    PDivisor,
    PointOnP1,
    certificate_problems,
    degree,
    is_affine_space,
    is_proper,
)
from models.polyhedra import EMPTY, Coefficient, Cone, Polyhedron, lattice_translate_of, tail_cone
from utils.errors import ACoverError, PreconditionError, SliceRuleError, TFanError
from utils.parallel import parallel_map
from utils.reports import Report

logger = logging.getLogger("tfan")

ORIGIN_KINDS = ("marked", "unmarked-zero", "unmarked-infinity", "non-maximal-tail")


@dataclass(frozen=True)
class ChartOrigin:
    """
    Why a chart exists

    For maximal tails, cone is sigma. For a non-maximal tail, cell is the slice
    cell P at point at, cone its tail tau and exception the point z' that
    carries the empty coefficient.
    """

    kind: str
    cone: Cone
    cell: Optional[Polyhedron] = None
    at: Optional[PointOnP1] = None
    exception: Optional[PointOnP1] = None

    def describe(self) -> str:
        if self.kind == "non-maximal-tail" and self.cell is not None and self.at is not None:
            return f"cell {self.cell.describe()} at {self.at.label}"
        return f"{self.kind} tail {self.cone.describe()}"


@dataclass(frozen=True)
class ACoverChart:
    divisor: PDivisor
    origin: ChartOrigin
    certificate: AffineSpaceCertificate


@dataclass(frozen=True)
class ACoverCertificate:
    """
    The charts built for a fan, with the outcome of the global checks
    """

    input: DivisorialFan
    charts: Tuple[ACoverChart, ...]
    coverage_ok: bool
    markings_ok: bool
    report: Report

    @property
    def valid(self) -> bool:
        return self.coverage_ok and self.markings_ok and self.report.passed


@dataclass(frozen=True)
class _Plan:
    divisor: PDivisor
    origin: ChartOrigin


def find_lattice_translate(tau: Cone, slice_: Slice) -> Optional[LatticeVector]:
    """Smallest v in N with v + tau among the cells of slice_ or their faces"""
    found = [
        v
        for v in (lattice_translate_of(face, tau) for face in slice_.faces)
        if v is not None
    ]
    return min(found) if found else None


def _unmarked_charts(fan: DivisorialFan, sigma: Cone) -> List[_Plan]:
    cells = {point: slice_cell_for_tail(fan, point, sigma) for point in fan.point_universe}
    plans = []
    for puncture, kind in ((ZERO, "unmarked-zero"), (INFINITY, "unmarked-infinity")):
        coefficients: List[Tuple[PointOnP1, Coefficient]] = [(puncture, EMPTY)]
        coefficients += [(point, cell) for point, cell in cells.items() if point != puncture]
        plans.append(_Plan(PDivisor.create(sigma, coefficients), ChartOrigin(kind, sigma)))
    return plans


def _non_maximal_chart(fan: DivisorialFan, cell: Polyhedron, at: PointOnP1) -> _Plan:
    tau = tail_cone(cell)
    named = slices(fan)
    translates = {}
    missing = []
    for point in fan.point_universe:
        if point == at:
            continue
        v = find_lattice_translate(tau, named[point])
        if v is None:
            missing.append(point)
        else:
            translates[point] = v
    if len(missing) > 1:
        raise ACoverError(
            f"cell {cell.describe()} at {at.label}: no lattice translate of {tau.describe()} "
            f"in slices {', '.join(point.label for point in missing)}"
        )
    if missing:
        exception = missing[0]
    else:
        exception = INFINITY if at != INFINITY else ZERO

    sigma = tau.as_polyhedron()
    coefficients: List[Tuple[PointOnP1, Coefficient]] = [(exception, EMPTY), (at, cell)]
    coefficients += [
        (point, sigma.translate(v)) for point, v in translates.items() if point != exception
    ]
    return _Plan(
        PDivisor.create(tau, coefficients),
        ChartOrigin("non-maximal-tail", tau, cell=cell, at=at, exception=exception),
    )


def _plan_charts(fan: DivisorialFan) -> List[_Plan]:
    tails = tail_fan(fan)
    plans: List[_Plan] = []
    for sigma in tails.maximal:
        if tails.is_marked(sigma):
            member = next(
                m for m in fan.members if m.tail == sigma and degree(m) is not EMPTY
            )
            plans.append(_Plan(member, ChartOrigin("marked", sigma)))
        else:
            plans.extend(_unmarked_charts(fan, sigma))

    for point, slice_ in slices(fan).items():
        for cell in slice_.maximal_cells:
            if tail_cone(cell) not in tails.maximal:
                plans.append(_non_maximal_chart(fan, cell, point))
    return plans


def _certify(plan: _Plan) -> ACoverChart:
    try:
        certificate = is_affine_space(plan.divisor)
    except TFanError as e:
        raise ACoverError(f"chart for {plan.origin.describe()}: {e}") from e
    if certificate is None:
        raise ACoverError(
            f"chart for {plan.origin.describe()} could not be certified: {plan.divisor.describe()}"
        )
    logger.debug(f"Certified {plan.origin.describe()} with {certificate.the_cone.describe()}")
    return ACoverChart(plan.divisor, plan.origin, certificate)


def build_acover(fan: DivisorialFan, threads: Optional[int] = None) -> ACoverCertificate:
    """
    Build and certify an A-covering of the variety of fan

    Args:
        fan: divisorial fan of a smooth complete T-variety
        threads: worker bound for chart certification

    Returns:
        ACoverCertificate with charts in construction order

    Raises:
        PreconditionError: fan is not proper, complete, compatible and smooth
        ACoverError: a chart could not be built or certified
    """
    smooth = is_smooth_fan(fan, threads)
    if not smooth.passed:
        raise PreconditionError(
            f"fan does not satisfy the A-cover preconditions ({len(smooth.findings)} findings)",
            [(f.rule, f.location, f.message) for f in smooth.findings],
        )
    try:
        plans = _plan_charts(fan)
    except SliceRuleError as e:
        raise ACoverError(str(e)) from e
    charts = parallel_map(_certify, plans, threads)
    report = verify_acover(fan, charts)
    logger.info(f"Built {len(charts)} charts, verification {report.status}")
    return ACoverCertificate(
        fan,
        tuple(charts),
        bool(report.payload["coverage_ok"]),
        bool(report.payload["markings_ok"]),
        report,
    )


def chart_count_formula(fan: DivisorialFan) -> int:
    """#marked + 2 * #unmarked maximal tails + #maximal slice cells with non-maximal tail"""
    tails = tail_fan(fan)
    marked = len(tails.marked)
    unmarked = len(tails.maximal) - marked
    non_maximal = sum(
        1
        for slice_ in slices(fan).values()
        for cell in slice_.maximal_cells
        if tail_cone(cell) not in tails.maximal
    )
    return marked + 2 * unmarked + non_maximal


def verify_acover(fan: DivisorialFan, charts: Sequence[ACoverChart]) -> Report:
    """
    Check a set of charts against fan without trusting how they were built

    Rules: certificate (recomputed downgrade cone), properness, coverage of
    every maximal slice cell, compatibility of every chart coefficient with
    the input slices, and equality of markings.
    """
    report = Report("verify-acover")
    for index, chart in enumerate(charts):
        location = f"chart {index}"
        if not is_proper(chart.divisor):
            report.add("properness", location, f"{chart.divisor.describe()} is not a p-divisor")
            continue
        for problem in certificate_problems(chart.divisor, chart.certificate):
            report.add("certificate", location, problem)

    coverage_before = len(report.findings)
    for slice_ in [*slices(fan).values(), generic_slice(fan)]:
        for cell in slice_.maximal_cells:
            if not any(_chart_cell(chart, slice_.at) == cell for chart in charts):
                report.add("coverage", f"slice {slice_.label}", f"cell {cell.describe()} is not covered")
    coverage_ok = len(report.findings) == coverage_before

    for index, chart in enumerate(charts):
        points = set(fan.point_universe) | set(chart.divisor.points())
        for point in [None, *sorted(points, key=PointOnP1.sort_key)]:
            coefficient = _chart_cell(chart, point)
            if not isinstance(coefficient, Polyhedron):
                continue
            if coefficient not in slice_at(fan, point).faces:
                label = point.label if point is not None else "generic"
                report.add(
                    "compatibility",
                    f"chart {index}",
                    f"coefficient {coefficient.describe()} at {label} is not a face of the slice",
                )

    markings_ok = True
    if charts:
        expected = tail_fan(fan).marked
        actual = tail_fan(DivisorialFan.create([chart.divisor for chart in charts])).marked
        if set(expected) != set(actual):
            markings_ok = False
            report.add(
                "markings",
                "tail fan",
                "marked cones "
                + ", ".join(c.describe() for c in actual)
                + " differ from "
                + ", ".join(c.describe() for c in expected),
            )
    else:
        coverage_ok = markings_ok = False
        report.add("coverage", "charts", "no charts")

    report.payload["coverage_ok"] = coverage_ok
    report.payload["markings_ok"] = markings_ok
    report.payload["summary"] = {"charts": len(charts), "findings": len(report.findings)}
    return report


def _chart_cell(chart: ACoverChart, point: Optional[PointOnP1]) -> Coefficient:
    if point is None:
        return chart.divisor.tail.as_polyhedron()
    return chart.divisor.coefficient(point)
