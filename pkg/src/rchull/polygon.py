"""Polygon model: validation, orientation, annotated vertex lists."""

from __future__ import annotations

import enum
import logging
import warnings
from dataclasses import dataclass, field
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .geometry import (
    Location,
    Point,
    Scalar,
    _orient,
    point_in_polygon,
    segments_intersect,
    to_exact,
)

log = logging.getLogger(__name__)


class PolygonError(ValueError):
    """Base class for rejected vertex lists."""


class TooFewVertices(PolygonError):
    pass


class DuplicateConsecutiveVertex(PolygonError):
    def __init__(self, index: int):
        super().__init__(f"vertex {index} repeats its predecessor")
        self.index = index


class SelfIntersection(PolygonError):
    def __init__(self, i: int, j: int):
        super().__init__(f"edge {i} intersects edge {j}")
        self.edges = (i, j)


class InvalidRegionPair(PolygonError):
    pass


class CollinearVertexWarning(UserWarning):
    pass


class Orientation(enum.Enum):
    CLOCKWISE = "Clockwise"
    COUNTERCLOCKWISE = "CounterClockwise"


class Source(enum.Enum):
    A = "a"
    B = "b"

    @property
    def other(self) -> "Source":
        return Source.B if self is Source.A else Source.A

    @property
    def letter(self) -> str:
        return "p" if self is Source.A else "q"


class ContainmentMode(enum.Enum):
    STRICT_INTERIOR = "StrictInterior"
    TOUCHING = "Touching"


class AnnotatedVertex(NamedTuple):
    """A vertex remembering which polygon it came from and its 1-based index there."""

    point: Point
    source: Source
    index: int

    @property
    def label(self) -> str:
        return f"{self.source.letter}{self.index}"

    def __repr__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Polyline:
    vertices: Tuple[Point, ...]
    closed: bool = False

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise TooFewVertices("a polyline needs at least 2 vertices")
        for i in range(1, len(self.vertices)):
            if self.vertices[i] == self.vertices[i - 1]:
                raise DuplicateConsecutiveVertex(i)

    def is_vertex_canonical(self) -> bool:
        v = self.vertices
        for i in range(1, len(v) - 1):
            if _orient(v[i - 1], v[i], v[i + 1]) == 0:
                return False
        return True


def signed_area2(vertices: Sequence) -> Scalar:
    """Twice the shoelace signed area (negative for clockwise)."""
    total = 0
    k = len(vertices)
    for i in range(k):
        x1, y1 = vertices[i - 1]
        x2, y2 = vertices[i]
        total += x1 * y2 - x2 * y1
    return total


@dataclass(frozen=True)
class Polygon:
    """A simple polygon given by its frontier trace.

    Instances are produced by :func:`validate_simple`; the constructor itself
    trusts its input.
    """

    vertices: Tuple[Point, ...]
    warnings: Tuple[str, ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    @property
    def orientation(self) -> Orientation:
        return (Orientation.CLOCKWISE if signed_area2(self.vertices) < 0
                else Orientation.COUNTERCLOCKWISE)

    def edges(self):
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def locate(self, p) -> Location:
        return point_in_polygon(p, self.vertices)

    def bbox(self):
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)


def signed_area(poly) -> Scalar:
    """Shoelace signed area: +1 for the CCW unit square, -1 for the CW one."""
    a2 = signed_area2(poly.vertices if isinstance(poly, Polygon) else poly)
    return a2 // 2 if a2 % 2 == 0 else to_exact(a2) / 2


def _edge_pairs_crossing(vertices: Sequence) -> Optional[Tuple[int, int]]:
    """Return the first offending edge pair of the closed polyline, or None.

    Edges are swept by their x-extent so only overlapping candidates are
    tested. Adjacent edges may share only their common vertex.
    """
    k = len(vertices)
    edges = []
    for i in range(k):
        a = vertices[i]
        b = vertices[(i + 1) % k]
        lo, hi = (a[0], b[0]) if a[0] <= b[0] else (b[0], a[0])
        edges.append((lo, hi, i, a, b))
    edges.sort(key=lambda e: e[0])
    active: List[tuple] = []
    for lo, hi, i, a, b in edges:
        active = [e for e in active if e[1] >= lo]
        for _, _, j, c, d in active:
            if abs(i - j) == 1 or abs(i - j) == k - 1:
                # adjacent: the only shared point may be the common vertex
                if k == 3:
                    if _orient(a, b, c) == 0 and _orient(a, b, d) == 0:
                        return (min(i, j), max(i, j))
                    continue
                if _orient(a, b, c) == 0 and _orient(a, b, d) == 0:
                    # collinear adjacent edges overlap iff they fold back
                    shared = b if b in (c, d) else a
                    other_ij = a if shared == b else b
                    other_jk = d if shared == c else c
                    if ((other_ij[0] - shared[0]) * (other_jk[0] - shared[0])
                            + (other_ij[1] - shared[1]) * (other_jk[1] - shared[1])) > 0:
                        return (min(i, j), max(i, j))
                continue
            if segments_intersect((a, b), (c, d)):
                return (min(i, j), max(i, j))
        active.append((lo, hi, i, a, b))
    return None


def validate_simple(vertices: Iterable, merge_collinear: bool = True) -> Polygon:
    """Validate a vertex list as a simple polygon.

    Collinear consecutive vertices are merged (the middle one dropped) and a
    :class:`CollinearVertexWarning` is issued for each. Raises
    :class:`TooFewVertices`, :class:`DuplicateConsecutiveVertex` or
    :class:`SelfIntersection`.
    """
    pts = [p if isinstance(p, Point) else Point.of(*p) for p in vertices]
    if len(pts) < 3:
        raise TooFewVertices(f"a polygon needs at least 3 vertices, got {len(pts)}")
    for i in range(len(pts)):
        if pts[i] == pts[i - 1]:
            raise DuplicateConsecutiveVertex(i)
    notes: List[str] = []
    if merge_collinear:
        changed = True
        while changed and len(pts) >= 3:
            changed = False
            k = len(pts)
            for i in range(k):
                prev, cur, nxt = pts[i - 1], pts[i], pts[(i + 1) % k]
                if _orient(prev, cur, nxt) == 0:
                    # folding back is a self-overlap, not a mergeable vertex
                    dot = ((cur[0] - prev[0]) * (nxt[0] - cur[0])
                           + (cur[1] - prev[1]) * (nxt[1] - cur[1]))
                    if dot <= 0:
                        raise SelfIntersection((i - 1) % k, i)
                    msg = f"merged collinear vertex {cur} (position {i})"
                    notes.append(msg)
                    warnings.warn(msg, CollinearVertexWarning, stacklevel=2)
                    del pts[i]
                    changed = True
                    break
        if len(pts) < 3:
            raise TooFewVertices("polygon degenerates after collinear merging")
    if len(set(pts)) != len(pts):
        seen = {}
        for i, p in enumerate(pts):
            if p in seen:
                raise SelfIntersection(seen[p], i)
            seen[p] = i
    bad = _edge_pairs_crossing(pts)
    if bad is not None:
        raise SelfIntersection(*bad)
    if signed_area2(pts) == 0:
        raise SelfIntersection(0, 0)
    return Polygon(tuple(pts), tuple(notes))


def normalize_clockwise(poly: Polygon) -> Polygon:
    if signed_area2(poly.vertices) < 0:
        return poly
    return Polygon(tuple(reversed(poly.vertices)), poly.warnings)


def rotate_to_extreme(poly: Polygon) -> Polygon:
    """Rotate so the minimal-x vertex (ties: minimal y) comes first."""
    v = poly.vertices
    k = min(range(len(v)), key=lambda i: (v[i][0], v[i][1]))
    if k == 0:
        return poly
    return Polygon(v[k:] + v[:k], poly.warnings)


def prepare(poly: Polygon) -> Polygon:
    return rotate_to_extreme(normalize_clockwise(poly))


def annotate(poly: Polygon, source: Source) -> List[AnnotatedVertex]:
    return [AnnotatedVertex(p, source, i + 1) for i, p in enumerate(poly.vertices)]


def close_list(vertices: Sequence[AnnotatedVertex],
               index: Optional[int] = None) -> List[AnnotatedVertex]:
    """Append a copy of the first element carrying a fresh index.

    The fresh index defaults to one past the last element's index.
    """
    if not vertices:
        raise ValueError("cannot close an empty list")
    first = vertices[0]
    if index is None:
        index = vertices[-1].index + 1
    return list(vertices) + [AnnotatedVertex(first.point, first.source, index)]


@dataclass(frozen=True)
class RegionPair:
    """An inner polygon A contained in an outer polygon B."""

    inner: Polygon
    outer: Polygon
    containment_mode: ContainmentMode = ContainmentMode.STRICT_INTERIOR


def classify_containment(inner: Polygon, outer: Polygon) -> Optional[ContainmentMode]:
    """Return the containment mode of ``inner`` in ``outer`` or None if not contained."""
    touching = False
    for p in inner.vertices:
        loc = point_in_polygon(p, outer.vertices)
        if loc is Location.OUTSIDE:
            return None
        if loc is Location.ON_BOUNDARY:
            touching = True
    for a, b in inner.edges():
        for c, d in outer.edges():
            if segments_intersect((a, b), (c, d)):
                o1 = _orient(a, b, c)
                o2 = _orient(a, b, d)
                o3 = _orient(c, d, a)
                o4 = _orient(c, d, b)
                if o1 * o2 < 0 and o3 * o4 < 0:
                    return None
                touching = True
    if touching:
        # touching edges may still leave the outer polygon between contacts
        for a, b in inner.edges():
            mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
            if point_in_polygon(mid, outer.vertices) is Location.OUTSIDE:
                return None
        for q in outer.vertices:
            if point_in_polygon(q, inner.vertices) is Location.INSIDE:
                return None
        return ContainmentMode.TOUCHING
    return ContainmentMode.STRICT_INTERIOR


def make_region_pair(inner, outer, allow_touching: bool = False) -> RegionPair:
    """Validate, orient clockwise and check ``inner`` lies in ``outer``."""
    a = inner if isinstance(inner, Polygon) else validate_simple(inner)
    b = outer if isinstance(outer, Polygon) else validate_simple(outer)
    a = normalize_clockwise(a)
    b = normalize_clockwise(b)
    mode = classify_containment(a, b)
    if mode is None:
        raise InvalidRegionPair("inner polygon is not contained in the outer polygon")
    if mode is ContainmentMode.TOUCHING and not allow_touching:
        raise InvalidRegionPair(
            "inner polygon touches the outer frontier; pass allow_touching=True")
    return RegionPair(a, b, mode)
