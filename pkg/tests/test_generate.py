import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rchull.generate import (
    Family,
    GenerationFailure,
    GenSpec,
    generate,
    pair_from_cells,
    random_simple_polygon,
    write_corpus,
)
from rchull.geometry import Point
from rchull.io import read_polygon
from rchull.polygon import ContainmentMode, classify_containment, validate_simple


def test_triangle():
    p = random_simple_polygon(3, 1)
    assert len(p) == 3
    validate_simple(p.vertices, merge_collinear=False)


def test_fifty_gon_is_simple():
    p = random_simple_polygon(50, 12345)
    assert len(validate_simple(p.vertices, merge_collinear=False)) == 50


def test_determinism():
    assert random_simple_polygon(20, 9) == random_simple_polygon(20, 9)
    for fam in Family:
        spec = GenSpec(77, 8, 9, fam)
        assert generate(spec) == generate(spec)


def test_spec_bounds():
    with pytest.raises(ValueError):
        GenSpec(1, 2, 5)
    with pytest.raises(ValueError):
        GenSpec(2 ** 64, 5, 5)
    assert Family.parse("gridcontinuum") is Family.GRID_CONTINUUM
    with pytest.raises(ValueError):
        Family.parse("Nope")


def test_general_nested_thirty():
    pair = generate(GenSpec(5, 30, 30))
    assert len(pair.inner) == 30 and len(pair.outer) == 30
    assert pair.containment_mode is ContainmentMode.STRICT_INTERIOR


def test_unit_cell_continuum():
    pair = pair_from_cells({(0, 0)})
    assert set(pair.inner.vertices) == {Point(0, 0), Point(0, 1), Point(1, 1), Point(1, 0)}
    assert set(pair.outer.vertices) == {Point(-1, -1), Point(-1, 2), Point(2, 2), Point(2, -1)}


def test_pinched_cells_rejected():
    with pytest.raises(GenerationFailure):
        pair_from_cells({(0, 0), (1, 1)})


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 40), st.integers(3, 25), st.integers(3, 25),
       st.sampled_from(list(Family)))
def test_pairs_are_valid(seed, n, m, fam):
    pair = generate(GenSpec(seed, n, m, fam))
    for poly in (pair.inner, pair.outer):
        validate_simple(poly.vertices, merge_collinear=False)
    assert classify_containment(pair.inner, pair.outer) is ContainmentMode.STRICT_INTERIOR
    if fam is Family.GRID_CONTINUUM:
        for poly in (pair.inner, pair.outer):
            vs = poly.vertices
            for i in range(len(vs)):
                a, b = vs[i - 1], vs[i]
                assert a[0] == b[0] or a[1] == b[1]
                assert all(isinstance(c, int) for c in a)
    else:
        assert len(pair.inner) == n and len(pair.outer) == m


def test_corpus_writer(tmp_path):
    specs = [GenSpec(1, 6, 7), GenSpec(2, 5, 4, Family.GRID_CONTINUUM)]
    paths = write_corpus(specs, tmp_path)
    assert paths[0][0].name == "GeneralNested_s1_n6_m7_A.poly"
    for (pa, pb), spec in zip(paths, specs):
        pair = generate(spec)
        assert read_polygon(pa) == pair.inner
        assert read_polygon(pb) == pair.outer
