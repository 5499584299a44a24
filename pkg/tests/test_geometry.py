from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from shapely.geometry import LineString
from shapely.geometry import Point as SPoint
from shapely.geometry import Polygon as SPolygon

from rchull.generate import random_simple_polygon
from rchull.geometry import (
    Location,
    Point,
    Turn,
    orient_det,
    point_in_polygon,
    point_on_segment,
    segments_intersect,
    segments_properly_intersect,
    to_exact,
    turn_class,
    winding_number,
)

coord = st.integers(-50, 50)
pt = st.tuples(coord, coord)


def test_orient_det_examples():
    assert orient_det((0, 0), (1, 0), (0, 1)) == 1
    assert orient_det((0, 0), (1, 1), (2, 2)) == 0
    assert orient_det((0, 0), (0, 1), (1, 1)) == -1


def test_turn_class_examples():
    assert turn_class((0, 0), (0, 1), (1, 1)) is Turn.RIGHT
    assert turn_class((0, 0), (1, 0), (0, 1)) is Turn.LEFT
    assert turn_class((0, 0), (1, 0), (2, 0)) is Turn.COLLINEAR


def test_point_on_segment_examples():
    s = ((0, 0), (2, 2))
    assert point_on_segment((1, 1), s)
    assert not point_on_segment((3, 3), s)
    assert not point_on_segment((1, 0), s)


def test_segments_intersect_examples():
    assert segments_intersect(((0, 0), (2, 2)), ((0, 2), (2, 0)))
    assert not segments_intersect(((0, 0), (1, 1)), ((2, 2), (3, 3)))
    # a shared endpoint is contact, not a proper crossing
    assert not segments_properly_intersect(((0, 0), (1, 0)), ((1, 0), (2, 1)))
    assert segments_intersect(((0, 0), (1, 0)), ((1, 0), (2, 1)))


def test_point_in_polygon_examples():
    sq = [(0, 0), (0, 2), (2, 2), (2, 0)]
    assert point_in_polygon((1, 1), sq) is Location.INSIDE
    assert point_in_polygon((0, 1), sq) is Location.ON_BOUNDARY
    assert point_in_polygon((5, 5), sq) is Location.OUTSIDE
    assert point_in_polygon((1, 1), sq, convex_cw=True) is Location.INSIDE
    assert point_in_polygon((2, 1), sq, convex_cw=True) is Location.ON_BOUNDARY


def test_exact_conversion():
    assert to_exact("0.1") == Fraction(1, 10)
    assert to_exact("1/3") == Fraction(1, 3)
    assert to_exact("4/2") == 2 and isinstance(to_exact("4/2"), int)
    assert to_exact(Decimal("2.50")) == Fraction(5, 2)
    assert to_exact(3.0) == 3
    with pytest.raises(TypeError):
        to_exact(0.1)
    with pytest.raises(TypeError):
        to_exact(True)
    with pytest.raises(ValueError):
        to_exact("x")
    assert Point.of("1/2", 3) == Point(Fraction(1, 2), 3)


def test_rational_predicates_are_exact():
    # 0.1 + 0.2 style drift would break this collinearity in floating point
    a = Point.of("0.1", "0.2")
    b = Point.of("0.2", "0.4")
    c = Point.of("0.3", "0.6")
    assert orient_det(a, b, c) == 0


@given(pt, pt, pt)
def test_orient_antisymmetric_and_cyclic(a, b, c):
    d = orient_det(a, b, c)
    assert orient_det(b, c, a) == d
    assert orient_det(b, a, c) == -d


@given(pt, pt, pt, pt)
def test_intersection_symmetric(a, b, c, d):
    assert segments_intersect((a, b), (c, d)) == segments_intersect((c, d), (a, b))
    if segments_properly_intersect((a, b), (c, d)):
        assert segments_intersect((a, b), (c, d))


@given(pt, pt, pt, pt)
def test_intersection_matches_shapely(a, b, c, d):
    if a == b or c == d:
        return
    assert segments_intersect((a, b), (c, d)) == LineString([a, b]).intersects(LineString([c, d]))


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 12), st.integers(0, 10 ** 6), st.lists(pt, min_size=1, max_size=10))
def test_point_in_polygon_matches_shapely(n, seed, probes):
    poly = random_simple_polygon(n, seed, size=40).vertices
    shp = SPolygon(poly)
    for p in probes:
        loc = point_in_polygon(p, poly)
        sp = SPoint(p)
        if shp.boundary.intersects(sp):
            assert loc is Location.ON_BOUNDARY
        elif shp.contains(sp):
            assert loc is Location.INSIDE
            assert winding_number(p, poly) != 0
        else:
            assert loc is Location.OUTSIDE
            assert winding_number(p, poly) == 0
