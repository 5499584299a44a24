"""Exact planar predicates.

Coordinates are Python ``int`` or :class:`fractions.Fraction`; every predicate
is evaluated without rounding, so the sign decisions that drive the hull
engine are always correct. Integral fractions are collapsed to ``int`` on
construction to keep the common small-integer case fast.

Orientation convention: polygons are traced clockwise, a right turn
(negative determinant) is a convex vertex and a left turn is a concave one.
"""

from __future__ import annotations

import enum
from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Sequence, Union

Scalar = Union[int, Fraction]


def to_exact(value) -> Scalar:
    """Convert ``value`` to an exact rational, never via binary floating point.

    Strings such as ``"0.1"``, ``"-3"`` or ``"1/3"`` are parsed exactly.
    Floats are rejected unless they are integral, because their binary
    expansion is rarely what the caller meant.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return to_exact(Fraction(value.numerator, value.denominator))
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise ValueError(f"non-finite coordinate {value!r}")
        return to_exact(Fraction(value))
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                frac = Fraction(int(num), int(den))
            else:
                frac = Fraction(Decimal(text))
        except Exception as exc:  # noqa: BLE001 - re-raised with context
            raise ValueError(f"not a rational literal: {value!r}") from exc
        return to_exact(frac)
    if isinstance(value, float):
        if value.is_integer():
            return int(value)
        raise TypeError(
            f"refusing inexact float coordinate {value!r}; pass a string or Fraction"
        )
    raise TypeError(f"unsupported coordinate type {type(value).__name__}")


class Point(NamedTuple):
    x: Scalar
    y: Scalar

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(to_exact(x), to_exact(y))

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


class Turn(enum.Enum):
    RIGHT = "RightTurn"
    LEFT = "LeftTurn"
    COLLINEAR = "Collinear"


class Location(enum.Enum):
    INSIDE = "Inside"
    ON_BOUNDARY = "OnBoundary"
    OUTSIDE = "Outside"


class Segment(NamedTuple):
    a: Point
    b: Point


def orient_det(p1, p2, p3) -> Scalar:
    """D(p1, p2, p3) = x1*y2 + y1*x3 + x2*y3 - (x3*y2 + x2*y1 + x1*y3).

    Positive for a left turn, negative for a right turn, zero if collinear.
    """
    x1, y1 = p1
    x2, y2 = p2
    x3, y3 = p3
    return x1 * y2 + y1 * x3 + x2 * y3 - (x3 * y2 + x2 * y1 + x1 * y3)


def _orient(p1, p2, p3) -> int:
    # same sign as orient_det with fewer multiplications
    d = (p2[0] - p1[0]) * (p3[1] - p1[1]) - (p2[1] - p1[1]) * (p3[0] - p1[0])
    return (d > 0) - (d < 0)


def turn_class(p1, p2, p3) -> Turn:
    s = _orient(p1, p2, p3)
    if s < 0:
        return Turn.RIGHT
    if s > 0:
        return Turn.LEFT
    return Turn.COLLINEAR


def _in_box(p, a, b) -> bool:
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def point_on_segment(p, s) -> bool:
    """True iff ``p`` lies on the closed segment ``s``."""
    a, b = s
    return _orient(a, b, p) == 0 and _in_box(p, a, b)


def point_on_open_segment(p, s) -> bool:
    a, b = s
    return p != a and p != b and point_on_segment(p, s)


def segments_properly_intersect(s1, s2) -> bool:
    """True iff the two segments cross at a single interior point of both."""
    a, b = s1
    c, d = s2
    o1 = _orient(a, b, c)
    o2 = _orient(a, b, d)
    o3 = _orient(c, d, a)
    o4 = _orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def segments_intersect(s1, s2) -> bool:
    """True iff the closed segments share at least one point."""
    a, b = s1
    c, d = s2
    if (max(a[0], b[0]) < min(c[0], d[0]) or max(c[0], d[0]) < min(a[0], b[0])
            or max(a[1], b[1]) < min(c[1], d[1]) or max(c[1], d[1]) < min(a[1], b[1])):
        return False
    o1 = _orient(a, b, c)
    o2 = _orient(a, b, d)
    o3 = _orient(c, d, a)
    o4 = _orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return ((o1 == 0 and _in_box(c, a, b)) or (o2 == 0 and _in_box(d, a, b))
            or (o3 == 0 and _in_box(a, c, d)) or (o4 == 0 and _in_box(b, c, d)))


def point_in_polygon(p, poly: Sequence, convex_cw: bool = False) -> Location:
    """Classify ``p`` against the closed polygon with vertex list ``poly``.

    Crossing-number test with the half-open rule (an edge counts when it
    straddles the horizontal through ``p`` with one endpoint strictly above),
    which is the standard symbolic perturbation for vertices lying on the
    ray. Works for non-convex and, under the even-odd rule, for non-simple
    vertex lists. ``convex_cw=True`` enables the all-right-halfplanes shortcut,
    valid only for convex clockwise polygons.
    """
    k = len(poly)
    if k < 3 or len(set(poly)) < 3:
        raise ValueError("point_in_polygon needs at least 3 distinct vertices")
    px, py = p
    if convex_cw:
        on_edge = False
        for i in range(k):
            a = poly[i]
            b = poly[(i + 1) % k]
            s = _orient(a, b, p)
            if s > 0:
                return Location.OUTSIDE
            if s == 0:
                if _in_box(p, a, b):
                    on_edge = True
                else:
                    return Location.OUTSIDE
        return Location.ON_BOUNDARY if on_edge else Location.INSIDE
    inside = False
    for i in range(k):
        ax, ay = poly[i - 1]
        bx, by = poly[i]
        if ((ay > py) != (by > py)):
            # edge straddles the horizontal line through p
            s = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
            if s == 0:
                return Location.ON_BOUNDARY
            if (s > 0) == (by > ay):
                inside = not inside
        elif ay == py == by:
            if min(ax, bx) <= px <= max(ax, bx):
                return Location.ON_BOUNDARY
        elif (ax, ay) == (px, py) or (bx, by) == (px, py):
            return Location.ON_BOUNDARY
    return Location.INSIDE if inside else Location.OUTSIDE


def winding_number(p, cycle: Sequence) -> int:
    """Winding number of the closed vertex cycle around ``p`` (``p`` off the cycle)."""
    wn = 0
    px, py = p
    k = len(cycle)
    for i in range(k):
        a = cycle[i - 1]
        b = cycle[i]
        if a[1] <= py:
            if b[1] > py and _orient(a, b, p) > 0:
                wn += 1
        elif b[1] <= py and _orient(a, b, p) < 0:
            wn -= 1
    return wn


def squared_length(a, b) -> Scalar:
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    return dx * dx + dy * dy
