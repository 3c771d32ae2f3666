import json

import pytest

from pathsig.algebra import (
    RATIONALS,
    DenseMatrix,
    MultiPoly,
    RingMismatchError,
    UniPoly,
    VariableTable,
    parse_unipoly,
)
from pathsig.paths import (
    PathSegment,
    concat_paths,
    lin_path,
    path_from_json,
    path_to_json,
    poly_path,
    pw_lin_path,
)

X12 = VariableTable(("x_1", "x_2"))


def test_lin_path_parametrized_increment():
    x1 = MultiPoly.variable(X12, "x_1")
    x2 = MultiPoly.variable(X12, "x_2")
    z = lin_path([2 * x1, 3 * x2])
    assert z.dimension == 2
    assert len(z.segments) == 1
    assert z.segments[0].coordinates == (UniPoly(X12, {1: 2 * x1}), UniPoly(X12, {1: 3 * x2}))


def test_lin_path_zero_increment_gives_zero_segment():
    z = lin_path([0, 0])
    assert all(c.is_zero() for c in z.segments[0].coordinates)


def test_lin_path_unit_speed_line():
    z = lin_path([1])
    assert z.segments[0].coordinates == (UniPoly.t(RATIONALS),)


def test_pw_lin_path_identity():
    x = pw_lin_path(DenseMatrix.identity(3))
    assert x.dimension == 3
    assert len(x.segments) == 3
    t = UniPoly.t(RATIONALS)
    zero = UniPoly.zero(RATIONALS)
    assert x.segments[0].coordinates == (t, zero, zero)
    assert x.segments[1].coordinates == (zero, t, zero)
    assert x.segments[2].coordinates == (zero, zero, t)


def test_pw_lin_path_single_column_is_lin_path():
    assert pw_lin_path([[2], [3]]) == lin_path([2, 3])


def test_poly_path_monomial_coordinates():
    y = poly_path([UniPoly.t(RATIONALS, j) for j in (1, 2, 3)])
    assert y.dimension == 3
    assert len(y.segments) == 1
    assert [c.degree() for c in y.segments[0].coordinates] == [1, 2, 3]


def test_poly_path_drops_constant_terms():
    p = parse_unipoly("t + 2 t^2 + 5", RATIONALS)
    y = poly_path([p, UniPoly.const(RATIONALS, 5)])
    assert y.segments[0].coordinates[0] == parse_unipoly("t + 2 t^2", RATIONALS)
    assert y.segments[0].coordinates[1].is_zero()


def test_concat_formal_segments():
    x = pw_lin_path(DenseMatrix.identity(3))
    y = poly_path([UniPoly.t(RATIONALS, j) for j in (1, 2, 3)])
    xy = concat_paths(x, y)
    assert len(xy.segments) == 4
    assert xy.segments[:3] == x.segments
    assert xy.segments[3] == y.segments[0]


def test_concat_associative():
    x = lin_path([1, 0])
    y = lin_path([0, 1])
    z = lin_path([2, 2])
    assert concat_paths(concat_paths(x, y), z) == concat_paths(x, concat_paths(y, z))


def test_concat_dimension_mismatch():
    with pytest.raises(ValueError):
        concat_paths(lin_path([1]), lin_path([1, 2]))


def test_concat_table_mismatch():
    with pytest.raises(RingMismatchError):
        concat_paths(lin_path([1, 2]), lin_path([MultiPoly.variable(X12, "x_1"), MultiPoly.variable(X12, "x_2")]))


def test_segment_rejects_nonzero_constant():
    with pytest.raises(ValueError):
        PathSegment(1, (UniPoly.const(RATIONALS, 1),))


def test_path_json_round_trip():
    x1 = MultiPoly.variable(X12, "x_1")
    z = concat_paths(
        lin_path([2 * x1, MultiPoly.const(X12, 3)]),
        poly_path([UniPoly.t(X12, 2), UniPoly(X12, {1: x1, 3: 2 * x1})]),
    )
    data = json.loads(json.dumps(path_to_json(z)))
    assert path_from_json(data) == z


def test_path_json_rejects_t_variable():
    with pytest.raises(ValueError):
        path_from_json({"dimension": 1, "variables": ["t"], "segments": [["t"]]})


def test_path_str_mentions_segments():
    text = str(pw_lin_path(DenseMatrix.identity(2)))
    assert "2-dimensional" in text and "2 polynomial segments" in text
