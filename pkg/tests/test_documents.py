import copy
from fractions import Fraction

import pytest

from models.acover import build_acover
from models.documents import (
    acover_to_document,
    fan_to_document,
    parse_charts,
    parse_fan,
    parse_rational,
    parse_toric_fan,
    rational_to_document,
)
from models.pdivisor import ZERO, PointOnP1
from models.polyhedra import Polyhedron
from models.toric import face_fan, toric_downgrade
from utils.errors import DocumentError
from tests.conftest import F1_RAYS, P2_RAYS, Q_GE, hirzebruch, toric_document

P2_DOCUMENT = {
    "version": "tfan/1",
    "kind": "divisorial-fan",
    "rank": 1,
    "members": [
        {"tail": {"rays": [[1]]}, "coefficients": {"inf": "empty"}},
        {"tail": {"rays": [[-1]]}, "coefficients": {"inf": {"vertices": [[-1]]}}},
        {"tail": {"rays": [[1]]}, "coefficients": {"0": "empty", "inf": {"vertices": [[-1]]}}},
    ],
}


def test_rationals():
    assert parse_rational(3, "/x") == 3
    assert parse_rational("-1/2", "/x") == Fraction(-1, 2)
    assert rational_to_document(Fraction(-1, 2)) == "-1/2"
    assert rational_to_document(Fraction(4, 2)) == 2
    for bad in (0.5, "1.5", "1/0", True, None):
        with pytest.raises(DocumentError):
            parse_rational(bad, "/x")


def test_parse_fan():
    fan = parse_fan(P2_DOCUMENT)
    assert set(fan.members) == set(toric_downgrade(face_fan(P2_RAYS)).members)


@pytest.mark.parametrize("toric", [face_fan(F1_RAYS), hirzebruch(2), face_fan(P2_RAYS)])
def test_fan_document_round_trip(toric):
    fan = toric_downgrade(toric)
    doc = fan_to_document(fan)
    assert parse_fan(doc) == fan
    assert fan_to_document(parse_fan(doc)) == doc


def test_tail_keyword_and_explicit_rays():
    doc = copy.deepcopy(P2_DOCUMENT)
    doc["members"][0]["coefficients"]["0"] = "tail"
    doc["members"][1]["coefficients"]["inf"]["rays"] = [[-1]]
    assert parse_fan(doc) == parse_fan(P2_DOCUMENT)


def test_named_points():
    doc = copy.deepcopy(P2_DOCUMENT)
    doc["members"][0]["coefficients"]["p"] = {"vertices": [[1]]}
    doc["members"][0]["coefficients"]["@2/3"] = {"vertices": [["1/2"]]}
    fan = parse_fan(doc)
    member = fan.members[0]
    assert member.coefficient(PointOnP1.named("p")) == Polyhedron.interval(1, None)
    assert member.coefficient(PointOnP1.at(Fraction(2, 3))) == Polyhedron.interval(Fraction(1, 2), None)
    assert member.coefficient(ZERO) == Q_GE.as_polyhedron()


@pytest.mark.parametrize(
    "edit, position",
    [
        (lambda d: d.update(version="tfan/2"), "/version"),
        (lambda d: d.update(kind="toric-fan"), "/kind"),
        (lambda d: d.update(rank=0), "/rank"),
        (lambda d: d.update(members=[]), "/members"),
        (lambda d: d["members"][1]["coefficients"]["inf"].update(vertices=[[-1, 0]]), "/members/1/coefficients/inf/vertices/0"),
        (lambda d: d["members"][1]["coefficients"]["inf"].update(vertices=[[0.5]]), "/members/1/coefficients/inf/vertices/0/0"),
        (lambda d: d["members"][1]["coefficients"]["inf"].update(rays=[[1]]), "/members/1"),
        (lambda d: d["members"][0]["tail"].update(rays=[[1], [-1]]), "/members/0"),
        (lambda d: d["members"][0]["coefficients"].update({"@x": "empty"}), "/members/0/coefficients/@x"),
        (lambda d: d.update(points=["0"]), "/members/0/coefficients/inf"),
    ],
)
def test_parse_errors(edit, position):
    doc = copy.deepcopy(P2_DOCUMENT)
    edit(doc)
    with pytest.raises(DocumentError) as info:
        parse_fan(doc)
    assert info.value.position == position


def test_parse_toric_fan():
    assert parse_toric_fan(toric_document(F1_RAYS)) == face_fan(F1_RAYS)
    explicit = toric_document([(1, 0), (0, 1), (-1, 2), (0, -1)], [[0, 1], [1, 2], [2, 3], [3, 0]])
    assert parse_toric_fan(explicit) == hirzebruch(2)
    with pytest.raises(DocumentError) as info:
        parse_toric_fan(toric_document([(1, 0), (0, 1)]))
    assert info.value.position == "/rays"
    with pytest.raises(DocumentError):
        parse_toric_fan(toric_document([(1, 0), (0, 1)], [["a"]]))


def test_charts_round_trip(f1_fan):
    certificate = build_acover(f1_fan)
    charts = parse_charts(acover_to_document(certificate))
    assert tuple(charts) == certificate.charts


def test_chart_errors(f1_fan):
    doc = acover_to_document(build_acover(f1_fan))
    doc["charts"][0]["origin"]["kind"] = "guessed"
    with pytest.raises(DocumentError) as info:
        parse_charts(doc)
    assert info.value.position == "/charts/0/origin/kind"

    doc = acover_to_document(build_acover(f1_fan))
    doc["charts"][1]["certificate"]["regular"] = "yes"
    with pytest.raises(DocumentError) as info:
        parse_charts(doc)
    assert info.value.position == "/charts/1/certificate/regular"
