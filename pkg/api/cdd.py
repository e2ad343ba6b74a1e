"""Double description backend

The single adapter to cddlib (through pycddlib in exact fraction mode). It
converts between generator and inequality descriptions and nothing else; the
callers in models.polyhedra normalize what comes back.

Rows follow the cdd conventions: a generator row (1, x) is a vertex, (0, x) a
ray; an inequality row (b, a) means b + a.x >= 0.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, List, Sequence, Tuple

import cdd

logger = logging.getLogger("tfan")

NUMBER_TYPE = "fraction"

Row = Tuple[Fraction, ...]


@dataclass(frozen=True)
class Generators:
    """
    Vertices, rays and lineality generators of a polyhedron
    """

    vertices: Tuple[Row, ...]
    rays: Tuple[Row, ...]
    lines: Tuple[Row, ...]


@dataclass(frozen=True)
class Constraints:
    """
    Inequality rows (b, a) for b + a.x >= 0 and equation rows for b + a.x = 0
    """

    inequalities: Tuple[Row, ...]
    equations: Tuple[Row, ...]


def _make_matrix(rows: Sequence[Row], linear_rows: Sequence[Row], rep_type: Any) -> Any:
    if rows:
        mat = cdd.Matrix([list(row) for row in rows], linear=False, number_type=NUMBER_TYPE)
        if linear_rows:
            mat.extend([list(row) for row in linear_rows], linear=True)
    else:
        mat = cdd.Matrix([list(row) for row in linear_rows], linear=True, number_type=NUMBER_TYPE)
    mat.rep_type = rep_type
    return mat


def _read_rows(mat: Any) -> Tuple[List[Row], List[Row]]:
    plain: List[Row] = []
    linear: List[Row] = []
    lin_set = mat.lin_set
    for index in range(mat.row_size):
        row = tuple(Fraction(value) for value in mat[index])
        if index in lin_set:
            linear.append(row)
        else:
            plain.append(row)
    return plain, linear


@lru_cache(maxsize=65536)
def to_constraints(
    vertices: Tuple[Row, ...], rays: Tuple[Row, ...], lines: Tuple[Row, ...] = ()
) -> Constraints:
    """
    Irredundant inequality description of conv(vertices) + cone(rays) + span(lines)

    Args:
        vertices: at least one point, all of the same length
        rays: recession directions
        lines: lineality directions

    Returns:
        Constraints without the trivial row 1 >= 0
    """
    if not vertices:
        raise ValueError("a generator description needs at least one vertex")
    dim = len(vertices[0])
    zero = Fraction(0)
    mat = _make_matrix(
        [(Fraction(1),) + tuple(v) for v in vertices] + [(zero,) + tuple(r) for r in rays],
        [(zero,) + tuple(line) for line in lines],
        cdd.RepType.GENERATOR,
    )
    out = cdd.Polyhedron(mat).get_inequalities()
    if out.row_size:
        out.canonicalize()
    plain, linear = _read_rows(out)
    inequalities = tuple(row for row in plain if any(row[1:]))
    equations = tuple(row for row in linear if any(row[1:]))
    logger.debug(
        f"cdd: {len(vertices)} vertices, {len(rays)} rays in dimension {dim} "
        f"-> {len(inequalities)} inequalities, {len(equations)} equations"
    )
    return Constraints(inequalities, equations)


@lru_cache(maxsize=65536)
def to_generators(
    inequalities: Tuple[Row, ...], equations: Tuple[Row, ...], dim: int
) -> Generators:
    """
    Minimal generators of {x : b + a.x >= 0 for inequalities, = 0 for equations}

    Args:
        inequalities: rows (b, a) of length dim + 1
        equations: rows (b, a) of length dim + 1
        dim: ambient dimension

    Returns:
        Generators; all three tuples are empty when the system is infeasible.
        A homogeneous system (every b = 0) always gets the origin as its vertex
    """
    rows = list(inequalities)
    if not rows and not equations:
        # the whole space; cdd needs at least one row
        rows = [(Fraction(1),) + (Fraction(0),) * dim]
    mat = _make_matrix(rows, list(equations), cdd.RepType.INEQUALITY)
    out = cdd.Polyhedron(mat).get_generators()
    if out.row_size:
        out.canonicalize()
    plain, linear = _read_rows(out)
    vertices: List[Row] = []
    rays: List[Row] = []
    for row in plain:
        if row[0] != 0:
            vertices.append(tuple(value / row[0] for value in row[1:]))
        elif any(row[1:]):
            rays.append(row[1:])
    lines = tuple(row[1:] for row in linear if any(row[1:]))
    # cdd lists no vertex row for a cone
    if not vertices and all(row[0] == 0 for row in (*inequalities, *equations)):
        vertices.append((Fraction(0),) * dim)
    return Generators(tuple(vertices), tuple(rays), lines)
