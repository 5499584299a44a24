from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rchull.engine import compute
from rchull.generate import Family, GenSpec, generate
from rchull.geometry import Point
from rchull.io import (
    PolygonSyntaxError,
    parse_points,
    parse_polygon_file,
    read_trace,
    write_polygon_file,
    write_trace,
)
from rchull.polygon import SelfIntersection
from rchull.svg import render_svg


def test_parse_triangle():
    p = parse_polygon_file(b"POLY 3\n0 0\n2 0\n1 1\n")
    assert set(p.vertices) == {Point(0, 0), Point(2, 0), Point(1, 1)}


def test_parse_rational():
    p = parse_polygon_file("POLY 3\n0 0\n1/3 2/3\n1 0\n")
    assert Point(Fraction(1, 3), Fraction(2, 3)) in p.vertices


def test_parse_decimal_is_exact():
    pts = parse_points("POLY 3\n0.1 0\n0 0.3\n-1.25 0\n")
    assert pts[0].x == Fraction(1, 10) and pts[2].x == Fraction(-5, 4)


def test_missing_vertex_line_number():
    with pytest.raises(SyntaxError) as exc:
        parse_polygon_file("POLY 4\n0 0\n1 0\n1 1\n")
    assert exc.value.lineno == 5


def test_comments_and_errors():
    p = parse_points("# header comment\nPOLY 3 # three\n0 0\n\n# skip\n2 0\n1 1\n")
    assert len(p) == 3
    with pytest.raises(PolygonSyntaxError) as exc:
        parse_points("POLY 3\n0 0\n1 x\n2 2\n")
    assert exc.value.lineno == 3
    with pytest.raises(PolygonSyntaxError) as exc:
        parse_points("POLY 2\n0 0\n1 1\n2 2\n")
    assert exc.value.lineno == 4
    with pytest.raises(PolygonSyntaxError):
        parse_points("POLYGON 3\n")
    with pytest.raises(PolygonSyntaxError):
        parse_points("0 0\n")
    with pytest.raises(PolygonSyntaxError) as exc:
        parse_points("POLY 3\n0 0\n1 1/0\n2 2\n")
    assert exc.value.lineno == 3


def test_validation_passthrough():
    with pytest.raises(SelfIntersection):
        parse_polygon_file("POLY 4\n0 0\n2 2\n2 0\n0 2\n")


def test_write_canonical():
    p = parse_polygon_file("POLY 3\n0 0\n0 1\n1 0\n")
    assert write_polygon_file(p) == b"POLY 3\n0 0\n0 1\n1 0\n"
    q = parse_polygon_file("POLY 3\n0 0\n0.5 1\n2/6 0\n")
    text = write_polygon_file(q).decode()
    assert "1/2 1" in text and "1/3 0" in text
    assert write_polygon_file(parse_polygon_file(text)) == text.encode()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 40), st.integers(3, 20), st.integers(3, 20),
       st.sampled_from(list(Family)), st.integers(1, 7))
def test_round_trip(seed, n, m, fam, den):
    pair = generate(GenSpec(seed, n, m, fam))
    for poly in (pair.inner, pair.outer):
        assert parse_polygon_file(write_polygon_file(poly)) == poly
        scaled = [Point(Fraction(x, den), Fraction(y, den)) for x, y in poly.vertices]
        data = write_polygon_file(scaled)
        assert list(parse_polygon_file(data).vertices) == scaled
        assert write_polygon_file(parse_polygon_file(data)) == data


def test_trace_round_trip(demo_pair):
    lines = compute(demo_pair).trace_lines()
    assert read_trace(write_trace(lines)) == lines


def test_svg(demo_pair):
    out = compute(demo_pair).polygon
    svg = render_svg(demo_pair, out).decode()
    assert svg.startswith("<?xml") and 'version="1.1"' in svg
    assert 'id="rch"' in svg and 'stroke="#d01010"' in svg
    assert ">p19<" in svg and ">q23<" in svg
    bare = render_svg(demo_pair, None, labels=False).decode()
    assert 'id="rch"' not in bare and ">p1<" not in bare


def test_svg_grid_pair():
    pair = generate(GenSpec(4, 8, 4, Family.GRID_CONTINUUM))
    svg = render_svg(pair, compute(pair).polygon).decode()
    assert svg.count("<polygon") == 3
