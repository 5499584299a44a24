"""Iterative relative convex hull construction.

The working list starts as the convex hull of the inner polygon A (closed by
a copy of its first vertex) and only ever grows. A cursor walks the list;
whenever two consecutive entries come from the same polygon but are not
neighbours in it, the run of that polygon between them bounds a pocket
``O``. Vertices of the other polygon found in ``O`` form the polyline ``I``,
and the arc of ``CH(I)`` joining the two entries is spliced in. The two new
mixed edges at either end of the arc are then refined the same way with the
roles of the polygons exchanged (``O_S``/``I_S`` and ``O_E``/``I_E``). After a
window is processed the cursor stays put so the freshly created edges are
rescanned; nested pockets are found by the scan rather than by recursion.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .geometry import Location, Point, Segment, _orient, point_in_polygon, point_on_segment
from .melkman import HullList, melkman, monotone_chain
from .polygon import (
    AnnotatedVertex,
    InvalidRegionPair,
    Polygon,
    RegionPair,
    Source,
    annotate,
    close_list,
    prepare,
    signed_area2,
)

log = logging.getLogger(__name__)


class NonTerminationError(RuntimeError):
    """The iteration guard tripped before the scan finished."""


@dataclass(frozen=True)
class CavityWindow:
    start: AnnotatedVertex
    end: AnnotatedVertex
    source: Source
    position: int

    @property
    def cover(self) -> Segment:
        return Segment(self.start.point, self.end.point)


@dataclass
class TraceEvent:
    kind: str
    fields: Dict[str, str]

    def format(self) -> str:
        body = " ".join(f"{k}={v}" for k, v in self.fields.items())
        return f"{self.kind} {body}".rstrip()


def _labels(vs: Sequence[AnnotatedVertex]) -> str:
    return ",".join(v.label for v in vs)


@dataclass
class RchState:
    """Mutable scan state of one computation.

    ``working`` is the evolving hull list (closed: the last entry repeats
    ``p1`` under index ``n + 1``), ``cursor`` the 0-based scan position.
    """

    working: List[AnnotatedVertex]
    cursor: int
    lists: Dict[Source, List[AnnotatedVertex]]
    trace: List[TraceEvent] = field(default_factory=list)
    anomalies: List[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.working)

    def count(self, source: Source) -> int:
        return len(self.lists[source]) - 1

    def vertex(self, source: Source, index: int) -> AnnotatedVertex:
        """Vertex ``index`` (1-based, cyclic) of the source polygon."""
        n = self.count(source)
        return self.lists[source][(index - 1) % n]

    def key(self, v: AnnotatedVertex) -> Tuple[Source, int]:
        return v.source, (v.index - 1) % self.count(v.source) + 1

    def emit(self, kind: str, **fields) -> None:
        self.trace.append(TraceEvent(kind, {k: str(v) for k, v in fields.items()}))


@dataclass
class RchResult:
    polygon: Polygon
    vertices: List[AnnotatedVertex]
    hull_a: List[AnnotatedVertex]
    trace: List[TraceEvent]
    windows: int
    anomalies: List[str]
    merged: List[AnnotatedVertex]

    def trace_lines(self) -> List[str]:
        return [e.format() for e in self.trace]


def _gap(state: RchState, u: AnnotatedVertex, v: AnnotatedVertex) -> int:
    n = state.count(u.source)
    return (v.index - u.index) % n


def detect_cavity(state: RchState) -> Optional[CavityWindow]:
    """Window at the cursor if both entries share a source and skip vertices."""
    i = state.cursor
    if i >= state.size - 1:
        return None
    u = state.working[i]
    v = state.working[i + 1]
    if u.source is not v.source:
        return None
    if _gap(state, u, v) < 2:
        return None
    return CavityWindow(u, v, u.source, i)


def build_O(state: RchState, window: CavityWindow) -> List[AnnotatedVertex]:
    """Contiguous run of the window's source polygon from start to end."""
    u, v = window.start, window.end
    run = [u]
    for step in range(1, _gap(state, u, v)):
        run.append(state.vertex(u.source, u.index + step))
    run.append(v)
    return run


def _member(p: Point, region: Sequence[Point], excluded: Segment) -> bool:
    """Inside ``region`` or on its frontier, but not on the excluded segment."""
    if point_on_segment(p, excluded):
        return False
    return point_in_polygon(p, region) is not Location.OUTSIDE


def _region(vs: Sequence[AnnotatedVertex]) -> Optional[List[Point]]:
    pts = [v.point for v in vs]
    if len(set(pts)) < 3:
        return None
    return pts


def _bbox(pts):
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


def collect_inside(state: RchState, source: Source, region_vs: Sequence[AnnotatedVertex],
                   excluded: Segment) -> List[AnnotatedVertex]:
    """Vertices of ``source`` (in list order) lying in the region, cover excluded."""
    region = _region(region_vs)
    if region is None:
        return []
    x0, y0, x1, y1 = _bbox(region)
    out = []
    for w in state.lists[source][:-1]:
        px, py = w.point
        if px < x0 or px > x1 or py < y0 or py > y1:
            continue
        if _member(w.point, region, excluded):
            out.append(w)
    return out


def build_I(state: RchState, window: CavityWindow,
            O: Sequence[AnnotatedVertex]) -> List[AnnotatedVertex]:
    inner = collect_inside(state, window.source.other, O, window.cover)
    return [window.end, window.start] + inner


def _side(source: Source) -> int:
    # clockwise result: vertices of A bulge to the left of a chord, B to the right
    return 1 if source is Source.A else -1


def hull_arc(hull: HullList, polyline: Sequence[AnnotatedVertex], u: AnnotatedVertex,
             v: AnnotatedVertex, source: Source) -> Tuple[List[AnnotatedVertex], bool]:
    """Arc of the hull from ``u`` to ``v`` on the side where ``source`` vertices bulge.

    Returns (arc without its endpoints, used_fallback). When ``u`` and ``v``
    are adjacent hull vertices with the rest of the hull on the expected
    side, this is the hull minus the wrap point and the two cover endpoints.
    Otherwise only the polyline points strictly on the expected side of
    line ``uv`` are kept and their hull with ``u``, ``v`` is used.
    """
    side = _side(source)
    up, vp = u.point, v.point
    entries = hull.entries
    pts = [w.point for w in entries]
    if not hull.degenerate and up in pts and vp in pts:
        iu = pts.index(up)
        c = entries[iu:] + entries[:iu]
        arc = None
        if c[-1].point == vp:
            arc = c[1:-1]
        elif c[1].point == vp:
            arc = c[:1:-1]
        if arc is not None and all(_orient(up, vp, w.point) * side > 0 for w in arc):
            return list(arc), False
    fallback = not hull.degenerate
    keep = [w for w in polyline if w.point not in (up, vp)
            and _orient(up, vp, w.point) * side > 0]
    if not keep:
        return [], fallback
    cyc = monotone_chain([u, v] + keep)
    cpts = [w.point for w in cyc]
    iu = cpts.index(up)
    c = cyc[iu:] + cyc[:iu]
    arc = c[1:-1] if c[-1].point == vp else c[:1:-1]
    return list(arc), fallback


def _splice(state: RchState, pos: int, arc: Sequence[AnnotatedVertex]) -> int:
    """Insert ``arc`` before index ``pos``; return the number inserted."""
    present = {state.key(w) for w in state.working}
    fresh = []
    for w in arc:
        if state.key(w) in present:
            state.anomalies.append(f"duplicate {w.label} not reinserted")
            state.emit("DUPLICATE", vertex=w.label)
            continue
        fresh.append(w)
    for offset, w in enumerate(fresh):
        state.working.insert(pos + offset, w)
        state.emit("INSERT", pos=pos + offset + 1, vertex=w.label)
    return len(fresh)


def insert_hull_of_I(state: RchState, window: CavityWindow,
                     I: Sequence[AnnotatedVertex]) -> List[AnnotatedVertex]:
    """Splice the CH(I) arc between the window endpoints; return the inserted vertices."""
    if len(I) <= 2:
        return []
    hull = melkman(I)
    state.emit("HULL", of="I", raw=_labels(hull.raw), fallback=int(hull.fallback))
    arc, fb = hull_arc(hull, I, window.start, window.end, window.source.other)
    if fb:
        state.emit("ARC", of="I", fallback=1)
    k = _splice(state, window.position + 1, arc)
    return state.working[window.position + 1:window.position + 1 + k]


def _walk(state: RchState, source: Source, b: AnnotatedVertex, step: int,
          O_region: Optional[List[Point]]) -> List[AnnotatedVertex]:
    """Neighbours of ``b`` along its polygon, up to and including the first one outside O."""
    out = []
    n = state.count(source)
    for j in range(1, n):
        w = state.vertex(source, b.index + step * j)
        out.append(w)
        if O_region is None or point_in_polygon(w.point, O_region) is Location.OUTSIDE:
            break
    return out


@dataclass
class Refinement:
    side: str
    O: List[AnnotatedVertex]
    I: List[AnnotatedVertex]
    inserted: List[AnnotatedVertex]


def build_boundary_refinements(state: RchState, window: CavityWindow,
                               O: Sequence[AnnotatedVertex],
                               inserted: Sequence[AnnotatedVertex]):
    """Starting and ending pocket polygons and their polylines for the new mixed edges.

    Returns ``(O_S, I_S, O_E, I_E)`` as annotated vertex lists.
    """
    u, v = window.start, window.end
    b1, bk = inserted[0], inserted[-1]
    other = window.source.other
    O_region = _region(O)
    O_S = [u, b1] + _walk(state, other, b1, -1, O_region)
    I_S = [b1, u] + collect_inside(state, window.source, O_S, Segment(u.point, b1.point))
    O_E = [v, bk] + _walk(state, other, bk, +1, O_region)
    I_E = [v, bk] + collect_inside(state, window.source, O_E, Segment(bk.point, v.point))
    return O_S, I_S, O_E, I_E


def _refine(state: RchState, side: str, pos: int, O_side, I_side,
            a: AnnotatedVertex, b: AnnotatedVertex, source: Source) -> int:
    state.emit("REFINE", side=side, O=_labels(O_side), I=_labels(I_side))
    if len(I_side) <= 2:
        return 0
    hull = melkman(I_side)
    state.emit("HULL", of="I" + side, raw=_labels(hull.raw), fallback=int(hull.fallback))
    arc, fb = hull_arc(hull, I_side, a, b, source)
    if fb:
        state.emit("ARC", of="I" + side, fallback=1)
    return _splice(state, pos, arc)


def cav(state: RchState, window: CavityWindow) -> int:
    """Process one window; return the total number of vertices inserted.

    The roles of the two polygons follow ``window.source``: the pocket is
    cut from the window's own polygon and filled from the other one.
    """
    i = window.position
    state.emit("WINDOW", i=i + 1, src=window.source.value,
               start=window.start.label, end=window.end.label)
    O = build_O(state, window)
    I = build_I(state, window, O)
    state.emit("POCKET", O=_labels(O), I=_labels(I))
    inserted = insert_hull_of_I(state, window, I)
    k = len(inserted)
    if k == 0:
        return 0
    O_S, I_S, O_E, I_E = build_boundary_refinements(state, window, O, inserted)
    same = window.source
    ks = _refine(state, "S", i + 1, O_S, I_S, window.start, inserted[0], same)
    ke = _refine(state, "E", i + 1 + ks + k, O_E, I_E, inserted[-1], window.end, same)
    state.emit("LIST", items=_labels(state.working))
    return k + ks + ke


def _side_walk(state: RchState, w: AnnotatedVertex, step: int, s: Point, t: Point,
               side: int) -> List[AnnotatedVertex]:
    """Neighbours of ``w`` while strictly on ``side`` of line s-t, plus the first one that is not."""
    out = []
    n = state.count(w.source)
    for j in range(1, n):
        x = state.vertex(w.source, w.index + step * j)
        out.append(x)
        if _orient(s, t, x.point) * side <= 0:
            break
    return out


def refine_mixed(state: RchState, i: int) -> int:
    """Wrap a mixed edge around vertices of either polygon that cross it.

    For the edge s-t at ``i`` (one endpoint from each polygon), vertices of
    polygon Z that poke across it are sought in the pocket bounded by the
    edge and the chain of the other polygon walked from its endpoint away
    from the edge. A-vertices can only poke out to the left of s->t and
    B-vertices only in to the right. Returns the number inserted.
    """
    s, t = state.working[i], state.working[i + 1]
    for Z in (s.source, t.source):
        w, step = (t, -1) if t.source is not Z else (s, +1)
        side = _side(Z)
        chain = _side_walk(state, w, step, s.point, t.point, side)
        O = [s, t] + chain if step < 0 else [t, s] + chain
        found = collect_inside(state, Z, O, Segment(s.point, t.point))
        found = [x for x in found if _orient(s.point, t.point, x.point) * side > 0]
        if not found:
            continue
        I = [t, s] + found
        hull = melkman(I)
        arc, _ = hull_arc(hull, I, s, t, Z)
        if not arc:
            continue
        state.emit("MIXED", i=i + 1, start=s.label, end=t.label, of=Z.value,
                   O=_labels(O), I=_labels(I))
        k = _splice(state, i + 1, arc)
        if k:
            return k
    return 0


def initial_state(pair: RegionPair) -> RchState:
    A = prepare(pair.inner)
    B = prepare(pair.outer)
    n, m = len(A), len(B)
    la = close_list(annotate(A, Source.A), n + 1)
    lb = close_list(annotate(B, Source.B), m + 1)
    hull = melkman(la[:n])
    entries = list(hull.entries)
    if signed_area2([w.point for w in entries]) > 0:
        # the deque follows the turn of A's first vertex triple, which may be reflex
        entries.reverse()
    k = next(j for j, w in enumerate(entries) if w.index == 1)
    entries = entries[k:] + entries[:k]
    state = RchState(close_list(entries, n + 1), 0, {Source.A: la, Source.B: lb})
    state.emit("HULL", of="A", raw=_labels(hull.raw), fallback=int(hull.fallback))
    state.emit("INIT", items=_labels(state.working))
    return state


def _merge_collinear(vs: List[AnnotatedVertex]) -> Tuple[List[AnnotatedVertex], List]:
    out = list(vs)
    dropped = []
    changed = True
    while changed and len(out) > 3:
        changed = False
        for j in range(len(out)):
            a, b, c = out[j - 1], out[j], out[(j + 1) % len(out)]
            if _orient(a.point, b.point, c.point) == 0:
                dropped.append(out.pop(j))
                changed = True
                break
    return out, dropped


def run(state: RchState, max_steps: Optional[int] = None) -> RchState:
    """Scan the working list until the cursor reaches its end."""
    n = state.count(Source.A)
    m = state.count(Source.B)
    if max_steps is None:
        max_steps = 8 * (n + m + 2) ** 2
    processed = set()
    steps = 0
    while state.cursor < state.size - 1:
        steps += 1
        if steps > max_steps:
            raise NonTerminationError(
                f"scan exceeded {max_steps} steps at cursor {state.cursor + 1}")
        window = detect_cavity(state)
        if window is None:
            i = state.cursor
            u, v = state.working[i], state.working[i + 1]
            key = ("mixed", state.key(u), state.key(v))
            if u.source is not v.source and key not in processed:
                processed.add(key)
                if refine_mixed(state, i):
                    continue
            state.cursor += 1
            continue
        key = (state.key(window.start), state.key(window.end))
        if key in processed:
            state.emit("SKIP", i=state.cursor + 1, start=window.start.label,
                       end=window.end.label)
            state.cursor += 1
            continue
        processed.add(key)
        if cav(state, window) == 0:
            state.cursor += 1
    return state


def compute(pair: RegionPair, max_steps: Optional[int] = None) -> RchResult:
    """Run the full construction and keep the trace and annotations."""
    if not isinstance(pair, RegionPair):
        raise InvalidRegionPair("expected a RegionPair")
    state = initial_state(pair)
    hull_a = list(state.working[:-1])
    run(state, max_steps)
    final = state.working[:-1]
    merged, dropped = _merge_collinear(final)
    for w in dropped:
        state.emit("MERGE", vertex=w.label)
    state.emit("DONE", items=_labels(merged))
    windows = sum(1 for e in state.trace if e.kind == "WINDOW")
    return RchResult(
        polygon=Polygon(tuple(w.point for w in merged)),
        vertices=merged,
        hull_a=hull_a,
        trace=state.trace,
        windows=windows,
        anomalies=state.anomalies,
        merged=dropped,
    )


def relative_convex_hull(pair: RegionPair) -> Polygon:
    """Relative convex hull of ``pair.inner`` with respect to ``pair.outer``.

    The result is traced clockwise starting at the inner polygon's extreme
    vertex (minimal x, then minimal y).
    """
    return compute(pair).polygon


def replay_trace(lines: Sequence[str], pair: RegionPair) -> List[Point]:
    """Rebuild the output vertex list from INIT, INSERT and MERGE trace lines."""
    A = prepare(pair.inner)
    B = prepare(pair.outer)
    lookup = {"p": A.vertices, "q": B.vertices}

    def point(label: str) -> Point:
        seq = lookup[label[0]]
        return seq[(int(label[1:]) - 1) % len(seq)]

    items: List[str] = []
    for line in lines:
        kind, _, rest = line.partition(" ")
        fields = dict(tok.split("=", 1) for tok in rest.split())
        if kind == "INIT":
            items = fields["items"].split(",")
        elif kind == "INSERT":
            items.insert(int(fields["pos"]) - 1, fields["vertex"])
        elif kind == "MERGE":
            items.remove(fields["vertex"])
    return [point(lab) for lab in items[:-1]]
