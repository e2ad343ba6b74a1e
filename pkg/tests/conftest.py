"""Shared fixtures: small divisors and downgrades of well-known toric surfaces"""

import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple

import pytest

from models.divfan import DivisorialFan
from models.pdivisor import INFINITY, ZERO, PDivisor
from models.polyhedra import EMPTY, Cone, Polyhedron
from models.toric import ToricFan, face_fan, toric_downgrade

F1_RAYS = [(1, 0), (0, 1), (-1, 1), (0, -1)]
P2_RAYS = [(1, 0), (0, 1), (-1, -1)]
P1P1_RAYS = [(1, 0), (0, 1), (-1, 0), (0, -1)]
WEIGHTED_RAYS = [(1, 0), (0, 1), (-1, -2)]

Q_GE = Cone.from_rays(1, [(1,)])
Q_LE = Cone.from_rays(1, [(-1,)])
ORIGIN = Cone.zero(1)


def hirzebruch(a: int) -> ToricFan:
    """Fan of the Hirzebruch surface F_a, height on the second coordinate"""
    return ToricFan.create(2, [(1, 0), (0, 1), (-1, a), (0, -1)], [[0, 1], [1, 2], [2, 3], [3, 0]])


@pytest.fixture
def e1() -> PDivisor:
    """[1, inf) * 0 + [0, inf) * inf over Q>=0"""
    return PDivisor.create(Q_GE, [(ZERO, Polyhedron.interval(1, None)), (INFINITY, Polyhedron.interval(0, None))])


@pytest.fixture
def trivial() -> PDivisor:
    return PDivisor.create(Q_GE)


@pytest.fixture
def empty_at_zero() -> PDivisor:
    return PDivisor.create(Q_GE, [(ZERO, EMPTY)])


@pytest.fixture
def f1_fan() -> DivisorialFan:
    return toric_downgrade(face_fan(F1_RAYS))


@pytest.fixture
def p2_fan() -> DivisorialFan:
    return toric_downgrade(face_fan(P2_RAYS))


@pytest.fixture
def p1p1_fan() -> DivisorialFan:
    return toric_downgrade(face_fan(P1P1_RAYS))


@pytest.fixture
def weighted_fan() -> DivisorialFan:
    return toric_downgrade(face_fan(WEIGHTED_RAYS))


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Dict[str, Any]], Path]:
    def write(name: str, doc: Dict[str, Any]) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    return write


def toric_document(rays: List[Tuple[int, ...]], cones: Any = None) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "version": "tfan/1",
        "kind": "toric-fan",
        "rank": len(rays[0]),
        "rays": [list(r) for r in rays],
    }
    if cones is not None:
        doc["cones"] = cones
    return doc


@pytest.fixture
def toric_doc() -> Callable[..., Dict[str, Any]]:
    return toric_document
