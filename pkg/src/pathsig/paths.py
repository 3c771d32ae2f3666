"""Piecewise polynomial paths, encoded by their polynomial segments.

A path is an ordered sequence of segments, each a tuple of coordinate
polynomials in t that vanish at t = 0 (signatures are translation invariant,
so every segment is normalized to start at the origin). Concatenation is
purely formal: no reparametrization is ever attempted. Coefficients may live
in any variable table, which is how parametrized families of paths arise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .algebra import (
    RATIONALS,
    DenseMatrix,
    MultiPoly,
    RingMismatchError,
    UniPoly,
    VariableTable,
    parse_unipoly,
)


@dataclass(frozen=True)
class PathSegment:
    """One polynomial segment: d coordinate functions of t, zero at t = 0."""

    dimension: int
    coordinates: tuple[UniPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "coordinates", tuple(self.coordinates))
        if self.dimension < 1 or len(self.coordinates) != self.dimension:
            raise ValueError("segment dimension does not match coordinate count")
        table = self.coordinates[0].table
        for coord in self.coordinates:
            if coord.table != table:
                raise RingMismatchError("segment coordinates over different tables")
            if 0 in coord.coeffs:
                raise ValueError("segment coordinates must vanish at t = 0")

    @property
    def table(self) -> VariableTable:
        return self.coordinates[0].table


@dataclass(frozen=True)
class Path:
    """A piecewise polynomial path: dimension, coefficient table, segments."""

    dimension: int
    table: VariableTable
    segments: tuple[PathSegment, ...]

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise ValueError("a path needs at least one segment")
        for seg in self.segments:
            if seg.dimension != self.dimension:
                raise ValueError("segment dimension differs from path dimension")
            if seg.table != self.table:
                raise RingMismatchError("segment table differs from path table")

    def __str__(self) -> str:
        body = ", ".join(
            "{" + ", ".join(str(c) for c in seg.coordinates) + "}" for seg in self.segments
        )
        n = len(self.segments)
        plural = "s" if n != 1 else ""
        return (
            f"Path in {self.dimension}-dimensional space with {n} polynomial segment{plural}: "
            + "{" + body + "}"
        )


def _coerce_coordinate(value, table: VariableTable) -> UniPoly:
    if isinstance(value, UniPoly):
        if value.table != table:
            raise RingMismatchError("coordinate table differs from path table")
        return value
    return UniPoly.const(table, value)


def _infer_table(values, table: VariableTable | None) -> VariableTable:
    if table is not None:
        return table
    for v in values:
        if isinstance(v, (UniPoly, MultiPoly)):
            return v.table
    return RATIONALS


def lin_path(increment: Sequence, table: VariableTable | None = None) -> Path:
    """The linear path with the given increment: i-th coordinate is
    increment_i * t."""
    increment = list(increment)
    if not increment:
        raise ValueError("increment must be nonempty")
    table = _infer_table(increment, table)
    coords = []
    for value in increment:
        if isinstance(value, UniPoly):
            raise TypeError("linear path increments are ring elements, not t-polynomials")
        if not isinstance(value, MultiPoly):
            value = MultiPoly.const(table, value)
        elif value.table != table:
            raise RingMismatchError("increment table differs from path table")
        coords.append(UniPoly(table, {1: value}))
    segment = PathSegment(len(coords), tuple(coords))
    return Path(segment.dimension, table, (segment,))


def pw_lin_path(matrix, table: VariableTable | None = None) -> Path:
    """The piecewise linear path whose j-th segment is the linear path along
    column j of the increment matrix (d rows, one column per step)."""
    if not isinstance(matrix, DenseMatrix):
        matrix = DenseMatrix.from_rows(matrix, table=table)
    if table is None:
        table = matrix.table
    segments = []
    for j in range(matrix.cols):
        column = [matrix.at(i, j) for i in range(matrix.rows)]
        segments.extend(lin_path(column, table).segments)
    return Path(matrix.rows, table, tuple(segments))


def poly_path(coordinates: Sequence, table: VariableTable | None = None) -> Path:
    """A single-segment polynomial path from its coordinate functions.

    Constant terms are dropped: paths are translation-normalized to start at
    the origin.
    """
    coordinates = list(coordinates)
    if not coordinates:
        raise ValueError("need at least one coordinate function")
    table = _infer_table(coordinates, table)
    coords = tuple(_coerce_coordinate(c, table).drop_constant() for c in coordinates)
    segment = PathSegment(len(coords), coords)
    return Path(segment.dimension, table, (segment,))


def concat_paths(x: Path, y: Path) -> Path:
    """Formal concatenation: the segments of x followed by those of y."""
    if x.dimension != y.dimension:
        raise ValueError(
            f"cannot concatenate paths of dimensions {x.dimension} and {y.dimension}"
        )
    if x.table != y.table:
        raise RingMismatchError("paths over different coefficient tables")
    return Path(x.dimension, x.table, x.segments + y.segments)


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------


def path_to_json(path: Path) -> dict:
    return {
        "dimension": path.dimension,
        "variables": list(path.table.names),
        "segments": [[str(c) for c in seg.coordinates] for seg in path.segments],
    }


def path_from_json(data) -> Path:
    if isinstance(data, str):
        data = json.loads(data)
    table = VariableTable(tuple(data.get("variables", ())))
    if "t" in table:
        raise ValueError("'t' is reserved for the path parameter")
    dimension = int(data["dimension"])
    segments = []
    for seg in data["segments"]:
        coords = tuple(parse_unipoly(text, table).drop_constant() for text in seg)
        if len(coords) != dimension:
            raise ValueError("segment coordinate count differs from dimension")
        segments.append(PathSegment(dimension, coords))
    return Path(dimension, table, tuple(segments))
