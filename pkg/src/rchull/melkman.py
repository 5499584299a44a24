"""Convex hulls of polylines.

:func:`melkman` is the online deque algorithm for simple polylines. Its raw
deque holds the most recently confirmed hull point at both ends; the
processing order of the input is preserved around the hull. Because the
hull engine also feeds it polylines that are not simple, every result is
checked against the containment definition of a hull and replaced by an
ordered monotone-chain hull when the check fails.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .geometry import _orient


@dataclass
class HullList:
    """Hull vertices in traversal order, without the wrap-around duplicate.

    ``raw`` is the deque exactly as the online algorithm leaves it, with
    the last confirmed point at both ends. ``degenerate`` is set when the
    input has fewer than three non-collinear points; ``entries`` is then the
    ordered chain of distinct extreme points. ``fallback`` records that the
    general hull was used instead of the deque result.
    """

    entries: list
    raw: list
    degenerate: bool = False
    fallback: bool = False

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


def _pt(v):
    # annotated vertices carry their point first; bare points are 2-tuples
    return v.point if hasattr(v, "point") else v


def _dedupe(items: Sequence) -> list:
    out = []
    seen = set()
    for v in items:
        p = _pt(v)
        if p not in seen:
            seen.add(p)
            out.append(v)
    return out


def _degenerate(items: list) -> HullList:
    pts = [_pt(v) for v in items]
    if len(items) <= 1:
        return HullList(list(items), list(items), degenerate=True)
    # all collinear: the two extreme points, in input order
    lo = min(range(len(pts)), key=lambda i: pts[i])
    hi = max(range(len(pts)), key=lambda i: pts[i])
    ends = [items[i] for i in sorted((lo, hi))]
    return HullList(ends, list(ends), degenerate=True)


def _inside_turn(a, b, p, s) -> bool:
    o = _orient(a, b, p) * s
    if o != 0:
        return o > 0
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def melkman_raw(items: Sequence) -> Tuple[list, int]:
    """Run the deque algorithm; return (raw deque, orientation sign).

    The orientation sign is that of the first non-collinear triple, so the
    output follows the input's sense of traversal. Returns ``([], 0)`` if
    all points are collinear.
    """
    items = list(items)
    k = len(items)
    if k < 3:
        return [], 0
    # skip an initial collinear run, keeping its two extreme points
    j = 2
    while j < k and _orient(_pt(items[0]), _pt(items[1]), _pt(items[j])) == 0:
        j += 1
    if j == k:
        return [], 0
    head = items[:j]
    c = items[j]
    if j > 2:
        pts = [_pt(v) for v in head]
        lo = min(range(j), key=lambda i: pts[i])
        hi = max(range(j), key=lambda i: pts[i])
        a, b = (head[lo], head[hi]) if lo < hi else (head[hi], head[lo])
    else:
        a, b = head
    s = _orient(_pt(a), _pt(b), _pt(c))
    d = deque((c, a, b, c))
    for v in items[j + 1:]:
        p = _pt(v)
        # skip points inside the current hull or on its two exposed edges
        if (_inside_turn(_pt(d[-2]), _pt(d[-1]), p, s)
                and _inside_turn(_pt(d[0]), _pt(d[1]), p, s)):
            continue
        while len(d) > 2 and _orient(_pt(d[-2]), _pt(d[-1]), p) * s <= 0:
            d.pop()
        d.append(v)
        while len(d) > 2 and _orient(p, _pt(d[0]), _pt(d[1])) * s <= 0:
            d.popleft()
        d.appendleft(v)
    return list(d), s


def is_hull_of(cycle: Sequence, items: Sequence) -> bool:
    """Check that ``cycle`` is a strictly convex polygon enclosing every input point."""
    h = len(cycle)
    if h < 3:
        return False
    pts = [_pt(v) for v in cycle]
    s = _orient(pts[0], pts[1], pts[2])
    if s == 0:
        return False
    for i in range(h):
        if _orient(pts[i - 2], pts[i - 1], pts[i]) * s <= 0:
            return False
    # consistent turns could still wind more than once around
    key = [(p[1], p[0]) for p in pts]
    peaks = sum(1 for i in range(h) if key[i] > key[i - 1] and key[i] > key[(i + 1) % h])
    if peaks != 1:
        return False
    for v in items:
        p = _pt(v)
        for i in range(h):
            if _orient(pts[i - 1], pts[i], p) * s < 0:
                return False
    return True


def monotone_chain(items: Sequence) -> list:
    """Strictly convex hull in counterclockwise order (Andrew's algorithm)."""
    uniq = _dedupe(items)
    srt = sorted(uniq, key=_pt)
    if len(srt) < 3:
        return srt

    def half(seq):
        out = []
        for v in seq:
            while len(out) >= 2 and _orient(_pt(out[-2]), _pt(out[-1]), _pt(v)) <= 0:
                out.pop()
            out.append(v)
        return out

    lower = half(srt)
    upper = half(reversed(srt))
    return lower[:-1] + upper[:-1]


def _input_ordered(cycle: list, items: Sequence) -> Tuple[list, list]:
    """Orient and rotate a hull cycle to mimic the deque output format."""
    order = {_pt(v): i for i, v in enumerate(items)}
    rank = [order[_pt(v)] for v in cycle]

    def descents(r):
        return sum(1 for i in range(len(r)) if r[i] < r[i - 1])

    if descents(rank[::-1]) < descents(rank):
        cycle = cycle[::-1]
        rank = rank[::-1]
    top = max(range(len(cycle)), key=lambda i: rank[i])
    ordered = cycle[top + 1:] + cycle[:top + 1]
    return ordered, [ordered[-1]] + ordered


def melkman(items: Sequence, validate: bool = True) -> HullList:
    """Convex hull of a polyline given as an ordered vertex list.

    Returns the strictly convex hull vertices in the input's traversal
    sense, with the wrap-around duplicate removed. Inputs with fewer than
    three non-collinear points return the ordered distinct extreme points,
    flagged ``degenerate``.
    """
    items = _dedupe(items)
    if len(items) < 3:
        return _degenerate(items)
    raw, s = melkman_raw(items)
    if not raw:
        return _degenerate(items)
    entries = raw[1:]
    if validate and not is_hull_of(entries, items):
        cycle = monotone_chain(items)
        entries, raw = _input_ordered(cycle, items)
        return HullList(entries, raw, fallback=True)
    return HullList(entries, raw)


def brute_force_hull(points: Sequence) -> set:
    """Strict convex-hull vertices by the all-pairs supporting-line test.

    ``p`` is a vertex iff some line through ``p`` and another point keeps all
    points weakly on one side with ``p`` at an end of the collinear run.
    Cubic time; meant as an oracle.
    """
    pts = list(dict.fromkeys(_pt(v) for v in points))
    if len(pts) < 3:
        return set(pts)
    result = set()
    for p in pts:
        for q in pts:
            if q == p:
                continue
            left = right = False
            for r in pts:
                o = _orient(p, q, r)
                if o > 0:
                    left = True
                elif o < 0:
                    right = True
                if left and right:
                    break
            if left and right:
                continue
            # supporting line through p and q: p must be an end of the collinear run
            on_line = [r for r in pts if _orient(p, q, r) == 0]
            if p in (min(on_line), max(on_line)):
                if left or right:
                    result.add(p)
                break
    return result
