import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rchull.generate import random_simple_polygon
from rchull.geometry import Point
from rchull.polygon import (
    AnnotatedVertex,
    CollinearVertexWarning,
    ContainmentMode,
    DuplicateConsecutiveVertex,
    InvalidRegionPair,
    Orientation,
    Polygon,
    PolygonError,
    Polyline,
    SelfIntersection,
    Source,
    TooFewVertices,
    annotate,
    close_list,
    make_region_pair,
    normalize_clockwise,
    rotate_to_extreme,
    signed_area,
    validate_simple,
)

SQUARE_CW = [(0, 0), (0, 1), (1, 1), (1, 0)]


def test_square_is_clockwise():
    p = validate_simple(SQUARE_CW)
    assert p.orientation is Orientation.CLOCKWISE
    assert len(p) == 4


def test_bowtie_rejected():
    with pytest.raises(SelfIntersection):
        validate_simple([(0, 0), (2, 2), (2, 0), (0, 2)])


def test_collinear_vertex_merged():
    with pytest.warns(CollinearVertexWarning):
        p = validate_simple([(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)])
    assert len(p) == 4
    assert Point(1, 0) not in p.vertices
    assert p.warnings


def test_fold_back_rejected():
    with pytest.raises(SelfIntersection):
        validate_simple([(0, 0), (2, 0), (1, 0), (1, 3)])


def test_small_and_repeated_inputs():
    with pytest.raises(TooFewVertices):
        validate_simple([(0, 0), (1, 1)])
    with pytest.raises(DuplicateConsecutiveVertex):
        validate_simple([(0, 0), (0, 0), (1, 1), (1, 0)])
    with pytest.raises(SelfIntersection):
        # a repeated, non-consecutive vertex pinches the frontier
        validate_simple([(0, 0), (0, 2), (1, 1), (2, 2), (2, 0), (1, 1)])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        with pytest.raises(PolygonError):
            validate_simple([(0, 0), (1, 0), (2, 0)])


def test_polyline_invariants():
    assert Polyline((Point(0, 0), Point(1, 1), Point(2, 0))).is_vertex_canonical()
    assert not Polyline((Point(0, 0), Point(1, 1), Point(2, 2))).is_vertex_canonical()
    with pytest.raises(DuplicateConsecutiveVertex):
        Polyline((Point(0, 0), Point(0, 0)))


def test_normalize_clockwise():
    ccw = validate_simple(SQUARE_CW[::-1])
    cw = normalize_clockwise(ccw)
    assert cw.vertices == tuple(reversed(ccw.vertices))
    assert normalize_clockwise(cw) is cw


def test_rotate_to_extreme():
    p = Polygon((Point(1, 1), Point(1, 0), Point(0, 0), Point(0, 1)))
    assert rotate_to_extreme(p).vertices[0] == Point(0, 0)
    q = Polygon((Point(0, 0), Point(0, 1), Point(1, 1), Point(1, 0)))
    assert rotate_to_extreme(q) == q
    # two vertices share the minimal x: the lower one wins
    r = Polygon((Point(0, 3), Point(2, 2), Point(0, 1), Point(-0, 2)))
    assert rotate_to_extreme(r).vertices[0] == Point(0, 1)


def test_close_list():
    vs = [AnnotatedVertex(Point(i, i * i), Source.A, i + 1) for i in range(3)]
    closed = close_list(vs)
    assert [v.label for v in closed] == ["p1", "p2", "p3", "p4"]
    assert closed[-1].point == closed[0].point
    assert closed[:-1] == vs
    single = close_list(vs[:1])
    assert [v.label for v in single] == ["p1", "p2"]


def test_signed_area():
    assert signed_area(SQUARE_CW[::-1]) == 1
    assert signed_area(SQUARE_CW) == -1


def test_annotation_labels():
    labels = [v.label for v in annotate(validate_simple(SQUARE_CW), Source.B)]
    assert labels == ["q1", "q2", "q3", "q4"]


def test_region_pair_modes():
    outer = [(0, 0), (0, 10), (10, 10), (10, 0)]
    inner = [(2, 2), (2, 4), (4, 4), (4, 2)]
    assert make_region_pair(inner, outer).containment_mode is ContainmentMode.STRICT_INTERIOR
    touching = [(0, 2), (2, 4), (4, 2)]
    with pytest.raises(InvalidRegionPair):
        make_region_pair(touching, outer)
    pair = make_region_pair(touching, outer, allow_touching=True)
    assert pair.containment_mode is ContainmentMode.TOUCHING
    with pytest.raises(InvalidRegionPair):
        make_region_pair([(5, 5), (5, 15), (8, 5)], outer)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 25), st.integers(0, 10 ** 9))
def test_orientation_matches_area_sign(n, seed):
    p = random_simple_polygon(n, seed)
    assert (signed_area(p) < 0) == (p.orientation is Orientation.CLOCKWISE)
    rev = Polygon(tuple(reversed(p.vertices)))
    assert normalize_clockwise(rev).orientation is Orientation.CLOCKWISE
    assert normalize_clockwise(normalize_clockwise(rev)) == normalize_clockwise(rev)
