"""tfan JSON documents: divisorial fans, toric fans and A-coverings

Rationals are JSON integers or "p/q" strings, never floats. Points are
labelled "0", "inf", "@p/q" or by a name. Parse errors carry a JSON pointer
to the offending value.
"""

import re
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from models.acover import ACoverCertificate, ACoverChart, ChartOrigin, ORIGIN_KINDS
from models.divfan import DivisorialFan
from models.lattice import LatticeVector, Number, RationalVector
from models.pdivisor import AffineSpaceCertificate, PDivisor, PointOnP1
from models.polyhedra import EMPTY, Coefficient, Cone, Polyhedron
from models.toric import ToricFan, face_fan
from utils.errors import DocumentError, TFanError

VERSION = "tfan/1"
KIND_FAN = "divisorial-fan"
KIND_TORIC = "toric-fan"
KIND_ACOVER = "acover"

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def _field(doc: Dict[str, Any], key: str, position: str) -> Any:
    if key not in doc:
        raise DocumentError(f"missing field '{key}'", position)
    return doc[key]


def _object(value: Any, position: str) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise DocumentError("expected an object", position)
    return value


def _array(value: Any, position: str) -> List[Any]:
    if not isinstance(value, list):
        raise DocumentError("expected an array", position)
    return value


def _check_header(doc: Dict[str, Any], kind: str) -> int:
    version = _field(doc, "version", "")
    if version != VERSION:
        raise DocumentError(f"unsupported version {version!r}, expected {VERSION!r}", "/version")
    found = _field(doc, "kind", "")
    if found != kind:
        raise DocumentError(f"expected a {kind} document, got {found!r}", "/kind")
    rank = _field(doc, "rank", "")
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise DocumentError("rank must be a positive integer", "/rank")
    return rank


def parse_rational(value: Any, position: str) -> Fraction:
    if isinstance(value, bool):
        raise DocumentError("expected an integer or a 'p/q' string", position)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        numerator, _, denominator = value.partition("/")
        if denominator and int(denominator) == 0:
            raise DocumentError(f"zero denominator in {value!r}", position)
        return Fraction(int(numerator), int(denominator or 1))
    raise DocumentError(f"{value!r} is not an integer or a 'p/q' string", position)


def parse_vector(value: Any, rank: int, position: str) -> RationalVector:
    entries = _array(value, position)
    if len(entries) != rank:
        raise DocumentError(f"expected {rank} entries, got {len(entries)}", position)
    return tuple(parse_rational(x, f"{position}/{i}") for i, x in enumerate(entries))


def parse_lattice_vector(value: Any, rank: int, position: str) -> LatticeVector:
    vector = parse_vector(value, rank, position)
    if any(x.denominator != 1 for x in vector):
        raise DocumentError("expected a lattice vector", position)
    return tuple(int(x) for x in vector)


def parse_point(value: Any, position: str) -> PointOnP1:
    if not isinstance(value, str):
        raise DocumentError("a point label must be a string", position)
    try:
        return PointOnP1.parse(value)
    except TFanError as e:
        raise DocumentError(str(e), position) from e


def parse_cone(value: Any, rank: int, position: str) -> Cone:
    doc = _object(value, position)
    rays = _array(_field(doc, "rays", position), f"{position}/rays")
    vectors = [parse_lattice_vector(r, rank, f"{position}/rays/{i}") for i, r in enumerate(rays)]
    try:
        return Cone.from_rays(rank, vectors)
    except TFanError as e:
        raise DocumentError(str(e), position) from e


def parse_coefficient(value: Any, tail: Cone, position: str) -> Coefficient:
    if value == "empty":
        return EMPTY
    if value == "tail":
        return tail.as_polyhedron()
    doc = _object(value, position)
    vertices = _array(_field(doc, "vertices", position), f"{position}/vertices")
    if not vertices:
        raise DocumentError("a coefficient needs at least one vertex", f"{position}/vertices")
    points = [parse_vector(v, tail.rank, f"{position}/vertices/{i}") for i, v in enumerate(vertices)]
    if "rays" in doc:
        rays: Sequence[Sequence[Number]] = [
            parse_lattice_vector(r, tail.rank, f"{position}/rays/{i}")
            for i, r in enumerate(_array(doc["rays"], f"{position}/rays"))
        ]
    else:
        rays = tail.rays
    try:
        return Polyhedron.from_generators(tail.rank, points, rays)
    except TFanError as e:
        raise DocumentError(str(e), position) from e


def parse_member(
    value: Any, rank: int, position: str, declared: Optional[Sequence[PointOnP1]] = None
) -> PDivisor:
    doc = _object(value, position)
    tail = parse_cone(_field(doc, "tail", position), rank, f"{position}/tail")
    coefficients = _object(doc.get("coefficients", {}), f"{position}/coefficients")
    pairs = []
    for label, coefficient in coefficients.items():
        where = f"{position}/coefficients/{label}"
        point = parse_point(label, where)
        if declared is not None and point not in declared:
            raise DocumentError(f"point {label!r} is not declared in /points", where)
        pairs.append((point, parse_coefficient(coefficient, tail, where)))
    try:
        return PDivisor.create(tail, pairs)
    except TFanError as e:
        raise DocumentError(str(e), position) from e


def parse_fan(doc: Dict[str, Any]) -> DivisorialFan:
    """
    Parse a divisorial fan document

    Raises:
        DocumentError: with the position of the first problem
    """
    rank = _check_header(doc, KIND_FAN)
    declared = None
    if "points" in doc:
        labels = _array(doc["points"], "/points")
        declared = [parse_point(label, f"/points/{i}") for i, label in enumerate(labels)]
    members = _array(_field(doc, "members", ""), "/members")
    if not members:
        raise DocumentError("a divisorial fan needs at least one member", "/members")
    return DivisorialFan.create(
        [parse_member(m, rank, f"/members/{i}", declared) for i, m in enumerate(members)]
    )


def parse_toric_fan(doc: Dict[str, Any]) -> ToricFan:
    """Toric fan document; without "cones" the fan over the faces of conv(rays) is used"""
    rank = _check_header(doc, KIND_TORIC)
    rays = [
        parse_lattice_vector(r, rank, f"/rays/{i}")
        for i, r in enumerate(_array(_field(doc, "rays", ""), "/rays"))
    ]
    try:
        if "cones" not in doc:
            return face_fan(rays)
        cones = []
        for i, cone in enumerate(_array(doc["cones"], "/cones")):
            indices = _array(cone, f"/cones/{i}")
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in indices):
                raise DocumentError("cone entries must be ray indices", f"/cones/{i}")
            cones.append(indices)
        return ToricFan.create(rank, rays, cones)
    except DocumentError:
        raise
    except TFanError as e:
        raise DocumentError(str(e), "/rays") from e


def parse_charts(doc: Dict[str, Any]) -> List[ACoverChart]:
    """Charts of an A-covering document (the report written by the acover command)"""
    rank = _check_header(doc, KIND_ACOVER)
    charts = []
    for i, entry in enumerate(_array(_field(doc, "charts", ""), "/charts")):
        position = f"/charts/{i}"
        chart = _object(entry, position)
        divisor = parse_member(_field(chart, "divisor", position), rank, f"{position}/divisor")
        origin = _parse_origin(_field(chart, "origin", position), rank, f"{position}/origin")
        certificate = _parse_certificate(
            _field(chart, "certificate", position), rank, f"{position}/certificate"
        )
        charts.append(ACoverChart(divisor, origin, certificate))
    return charts


def _parse_origin(value: Any, rank: int, position: str) -> ChartOrigin:
    doc = _object(value, position)
    kind = _field(doc, "kind", position)
    if kind not in ORIGIN_KINDS:
        raise DocumentError(f"unknown chart origin {kind!r}", f"{position}/kind")
    cone = parse_cone(_field(doc, "cone", position), rank, f"{position}/cone")
    cell = None
    if "cell" in doc:
        parsed = parse_coefficient(doc["cell"], cone, f"{position}/cell")
        cell = parsed if isinstance(parsed, Polyhedron) else None
    at = parse_point(doc["at"], f"{position}/at") if "at" in doc else None
    exception = parse_point(doc["exception"], f"{position}/exception") if "exception" in doc else None
    return ChartOrigin(kind, cone, cell, at, exception)


def _parse_certificate(value: Any, rank: int, position: str) -> AffineSpaceCertificate:
    doc = _object(value, position)
    flags = []
    for key in ("regular", "full_dimensional"):
        flag = _field(doc, key, position)
        if not isinstance(flag, bool):
            raise DocumentError("expected true or false", f"{position}/{key}")
        flags.append(flag)
    cone = parse_cone(_field(doc, "cone", position), rank + 1, f"{position}/cone")
    return AffineSpaceCertificate(
        cone,
        parse_point(_field(doc, "y0", position), f"{position}/y0"),
        parse_point(_field(doc, "y_inf", position), f"{position}/y_inf"),
        parse_lattice_vector(_field(doc, "w0", position), rank, f"{position}/w0"),
        parse_lattice_vector(_field(doc, "w_inf", position), rank, f"{position}/w_inf"),
        parse_lattice_vector(_field(doc, "v", position), rank, f"{position}/v"),
        flags[0],
        flags[1],
    )


def rational_to_document(x: Number) -> Any:
    q = Fraction(x)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vector_to_document(v: Sequence[Number]) -> List[Any]:
    return [rational_to_document(x) for x in v]


def cone_to_document(cone: Cone) -> Dict[str, Any]:
    return {"rays": [list(r) for r in cone.rays]}


def coefficient_to_document(coefficient: Coefficient, tail: Optional[Cone] = None) -> Any:
    if not isinstance(coefficient, Polyhedron):
        return "empty"
    doc: Dict[str, Any] = {"vertices": [vector_to_document(v) for v in coefficient.vertices]}
    if tail is None or coefficient.tail_rays != tail.rays:
        doc["rays"] = [list(r) for r in coefficient.tail_rays]
    return doc


def member_to_document(d: PDivisor) -> Dict[str, Any]:
    return {
        "tail": cone_to_document(d.tail),
        "coefficients": {
            point.label: coefficient_to_document(coefficient, d.tail)
            for point, coefficient in d.support
        },
    }


def fan_to_document(fan: DivisorialFan) -> Dict[str, Any]:
    """Canonical document of a divisorial fan; parse_fan inverts it"""
    return {
        "version": VERSION,
        "kind": KIND_FAN,
        "rank": fan.rank,
        "members": [member_to_document(member) for member in fan.members],
    }


def certificate_to_document(certificate: AffineSpaceCertificate) -> Dict[str, Any]:
    return {
        "cone": cone_to_document(certificate.the_cone),
        "y0": certificate.y0.label,
        "y_inf": certificate.y_inf.label,
        "w0": list(certificate.w0),
        "w_inf": list(certificate.w_inf),
        "v": list(certificate.v),
        "regular": certificate.regular,
        "full_dimensional": certificate.full_dimensional,
    }


def origin_to_document(origin: ChartOrigin) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"kind": origin.kind, "cone": cone_to_document(origin.cone)}
    if origin.cell is not None:
        doc["cell"] = coefficient_to_document(origin.cell)
    if origin.at is not None:
        doc["at"] = origin.at.label
    if origin.exception is not None:
        doc["exception"] = origin.exception.label
    return doc


def chart_to_document(chart: ACoverChart) -> Dict[str, Any]:
    return {
        "origin": origin_to_document(chart.origin),
        "divisor": member_to_document(chart.divisor),
        "certificate": certificate_to_document(chart.certificate),
    }


def acover_to_document(certificate: ACoverCertificate) -> Dict[str, Any]:
    """Header and charts of an A-covering, readable by parse_charts"""
    return {
        "version": VERSION,
        "kind": KIND_ACOVER,
        "rank": certificate.input.rank,
        "charts": [chart_to_document(chart) for chart in certificate.charts],
        "coverage_ok": certificate.coverage_ok,
        "markings_ok": certificate.markings_ok,
    }
