"""Seeded generation of nested polygon pairs on the integer grid.

Every generator is a pure function of its :class:`GenSpec`: the same spec
gives the same pair, coordinate for coordinate. Inner polygons are grown
inside the outer one by repeatedly replacing an edge ``a b`` with ``a c b``
for a nearby grid point ``c``; a new vertex is accepted only when the two new
edges cross nothing, so simplicity and strict nesting hold by construction.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .geometry import Location, Point, _orient, point_in_polygon, segments_intersect
from .melkman import monotone_chain
from .polygon import (
    ContainmentMode,
    Polygon,
    PolygonError,
    RegionPair,
    classify_containment,
    normalize_clockwise,
    validate_simple,
)


class GenerationFailure(RuntimeError):
    pass


class Family(enum.Enum):
    GENERAL_NESTED = "GeneralNested"
    GRID_CONTINUUM = "GridContinuum"
    CONVEX_OUTER = "ConvexOuter"
    CONVEX_INNER = "ConvexInner"

    @classmethod
    def parse(cls, name: str) -> "Family":
        for f in cls:
            if name in (f.value, f.name, f.value.lower()):
                return f
        raise ValueError(f"unknown family {name!r}")


@dataclass(frozen=True)
class GenSpec:
    seed: int
    inner_vertices: int
    outer_vertices: int
    family: Family = Family.GENERAL_NESTED

    def __post_init__(self):
        if self.inner_vertices < 3 or self.outer_vertices < 3:
            raise ValueError("both polygons need at least 3 vertices")
        if not -2 ** 63 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")

    @property
    def tag(self) -> str:
        return f"{self.family.value}_s{self.seed}_n{self.inner_vertices}_m{self.outer_vertices}"


def _rng(seed: int, salt: str) -> random.Random:
    return random.Random(f"{salt}:{seed}")


def _crossings(pts: Sequence[Point]) -> Optional[Tuple[int, int]]:
    k = len(pts)
    for i in range(k):
        a, b = pts[i], pts[(i + 1) % k]
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            c, d = pts[j], pts[(j + 1) % k]
            if segments_intersect((a, b), (c, d)):
                return i, j
    return None


def _untangle(pts: List[Point], budget: int) -> Optional[List[Point]]:
    # 2-opt: reversing the run between two crossing edges shortens the tour
    for _ in range(budget):
        hit = _crossings(pts)
        if hit is None:
            return pts
        i, j = hit
        pts[i + 1:j + 1] = reversed(pts[i + 1:j + 1])
    return None


def _nearest_tour(pts: List[Point]) -> List[Point]:
    rest = pts[1:]
    tour = [pts[0]]
    while rest:
        cx, cy = tour[-1]
        k = min(range(len(rest)), key=lambda i: (rest[i][0] - cx) ** 2 + (rest[i][1] - cy) ** 2)
        tour.append(rest.pop(k))
    return tour


def _is_exact_simple(pts: Sequence[Point]) -> bool:
    k = len(pts)
    if any(_orient(pts[i - 1], pts[i], pts[(i + 1) % k]) == 0 for i in range(k)):
        return False
    try:
        validate_simple(pts, merge_collinear=False)
    except PolygonError:
        return False
    return True


def random_simple_polygon(n: int, seed: int, size: Optional[int] = None,
                          retries: int = 50) -> Polygon:
    """Simple polygon with exactly ``n`` integer vertices, traced clockwise."""
    if n < 3:
        raise ValueError("n must be at least 3")
    size = size or max(16, 8 * n)
    rng = _rng(seed, "simple")
    for _ in range(retries):
        pts = set()
        while len(pts) < n:
            pts.add(Point(rng.randrange(size), rng.randrange(size)))
        tour = _nearest_tour(sorted(pts))
        tour = _untangle(tour, budget=20 * n * n)
        if tour is not None and _is_exact_simple(tour):
            return normalize_clockwise(Polygon(tuple(tour)))
    raise GenerationFailure(f"no simple {n}-gon after {retries} attempts")


def _lattice_convex(n: int, rng: random.Random, radius: Optional[int] = None) -> List[Point]:
    radius = radius or max(8, int(2 * n ** 1.5) + 4)
    for _ in range(200):
        angles = sorted(rng.random() * 2 * math.pi for _ in range(n))
        pts = {Point(round(radius * math.cos(t)), round(radius * math.sin(t))) for t in angles}
        hull = monotone_chain(list(pts))
        if len(hull) == n:
            return list(reversed(hull))
        radius += radius // 4 + 1
    raise GenerationFailure(f"no convex lattice {n}-gon")


def _edges(poly: Sequence[Point]):
    k = len(poly)
    return [(poly[i], poly[(i + 1) % k]) for i in range(k)]


def _clearance(p, poly: Sequence[Point]) -> float:
    best = math.inf
    px, py = float(p[0]), float(p[1])
    for a, b in _edges(poly):
        ax, ay, bx, by = float(a[0]), float(a[1]), float(b[0]), float(b[1])
        dx, dy = bx - ax, by - ay
        t = max(0.0, min(1.0, ((px - ax) * dx + (py - ay) * dy) / (dx * dx + dy * dy)))
        best = min(best, math.hypot(px - ax - t * dx, py - ay - t * dy))
    return best


def _roomy_point(poly: Sequence[Point], rng: random.Random, tries: int = 64) -> Tuple[Point, float]:
    """An interior grid point far from the frontier, and its clearance."""
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    best = None
    for _ in range(tries):
        p = Point(rng.randint(min(xs), max(xs)), rng.randint(min(ys), max(ys)))
        if point_in_polygon(p, poly) is not Location.INSIDE:
            continue
        c = _clearance(p, poly)
        if best is None or c > best[1]:
            best = (p, c)
    if best is None:
        raise GenerationFailure("no interior grid point found")
    return best


def _scale(poly: Sequence[Point], k: int) -> List[Point]:
    return [Point(k * p[0], k * p[1]) for p in poly]


def _grow(A: List[Point], B: Sequence[Point], n: int, rng: random.Random,
          reach: int, budget: int) -> Optional[List[Point]]:
    """Insert vertices into ``A`` one at a time until it has ``n`` of them."""
    b_edges = _edges(B)
    fails = 0
    while len(A) < n:
        if fails > budget:
            return None
        k = len(A)
        i = rng.randrange(k)
        a, b = A[i], A[(i + 1) % k]
        prev, nxt = A[i - 1], A[(i + 2) % k]
        span = max(2, int(math.hypot(b[0] - a[0], b[1] - a[1])) // 2 + 1, reach)
        mx, my = (a[0] + b[0]) // 2, (a[1] + b[1]) // 2
        c = Point(mx + rng.randint(-span, span), my + rng.randint(-span, span))
        if (c in A or _orient(a, c, b) == 0 or _orient(prev, a, c) == 0
                or _orient(c, b, nxt) == 0
                or point_in_polygon(c, B) is not Location.INSIDE
                or not _free(a, c, b, A, i, b_edges)):
            fails += 1
            continue
        A.insert(i + 1, c)
        fails = 0
    return A


def _movable(A: List[Point], i: int, c: Point, b_edges) -> bool:
    """Can vertex ``i`` of ``A`` move to ``c`` keeping A simple and inside B?"""
    k = len(A)
    prev, nxt = A[i - 1], A[(i + 1) % k]
    pp, nn = A[i - 2], A[(i + 2) % k]
    if (c in A or _orient(prev, c, nxt) == 0 or _orient(pp, prev, c) == 0
            or _orient(c, nxt, nn) == 0):
        return False
    for s in ((prev, c), (c, nxt)):
        for e in b_edges:
            if segments_intersect(s, e):
                return False
    for j in range(k):
        d, e = A[j], A[(j + 1) % k]
        if j in (i, (i - 1) % k):
            continue
        if (j + 1) % k == (i - 1) % k:
            if segments_intersect((c, nxt), (d, e)) or _touches_beyond((prev, c), (d, e), prev):
                return False
            continue
        if j == (i + 1) % k:
            if segments_intersect((prev, c), (d, e)) or _touches_beyond((c, nxt), (d, e), nxt):
                return False
            continue
        if segments_intersect((prev, c), (d, e)) or segments_intersect((c, nxt), (d, e)):
            return False
    return True


def _inflate(A: List[Point], B: Sequence[Point], rng: random.Random, moves: int,
             reach: int) -> List[Point]:
    """Random vertex moves that never shrink the area, so A presses into B's pockets."""
    b_edges = _edges(B)
    k = len(A)
    for _ in range(moves):
        i = rng.randrange(k)
        p = A[i]
        c = Point(p[0] + rng.randint(-reach, reach), p[1] + rng.randint(-reach, reach))
        prev, nxt = A[i - 1], A[(i + 1) % k]
        # for a clockwise polygon this cross product grows with the enclosed area
        old = (nxt[0] - prev[0]) * (p[1] - prev[1]) - (nxt[1] - prev[1]) * (p[0] - prev[0])
        new = (nxt[0] - prev[0]) * (c[1] - prev[1]) - (nxt[1] - prev[1]) * (c[0] - prev[0])
        if new < old and rng.random() > 0.1:
            continue
        if point_in_polygon(c, B) is not Location.INSIDE or not _movable(A, i, c, b_edges):
            continue
        A[i] = c
    return A


def _free(a, c, b, A, i, b_edges) -> bool:
    k = len(A)
    for s in ((a, c), (c, b)):
        for e in b_edges:
            if segments_intersect(s, e):
                return False
    for j in range(k):
        if j == i:
            continue
        d, e = A[j], A[(j + 1) % k]
        if (j + 1) % k == i:
            # edge ending at a: only a may be shared, and only with a-c
            if segments_intersect((c, b), (d, e)) or _touches_beyond((a, c), (d, e), a):
                return False
            continue
        if j == (i + 1) % k:
            if segments_intersect((a, c), (d, e)) or _touches_beyond((c, b), (d, e), b):
                return False
            continue
        if segments_intersect((a, c), (d, e)) or segments_intersect((c, b), (d, e)):
            return False
    return True


def _touches_beyond(s, e, shared) -> bool:
    # two edges sharing ``shared`` overlap elsewhere only if collinear and folded
    (p, q), (r, t) = s, e
    other_s = q if p == shared else p
    other_e = t if r == shared else r
    if _orient(shared, other_s, other_e) != 0:
        return False
    return ((other_s[0] - shared[0]) * (other_e[0] - shared[0])
            + (other_s[1] - shared[1]) * (other_e[1] - shared[1])) > 0


def _seed_triangle(B: Sequence[Point], rng: random.Random) -> Tuple[List[Point], List[Point], int]:
    """Place a small triangle strictly inside ``B`` (scaling ``B`` up if needed)."""
    p, room = _roomy_point(B, rng)
    factor = 1
    if room < 4:
        factor = int(math.ceil(4 / max(room, 0.25)))
        B = _scale(B, factor)
        p = Point(p[0] * factor, p[1] * factor)
        room *= factor
    r = max(1, int(room / 3))
    tri = [Point(p[0] - r, p[1] - r), Point(p[0], p[1] + r), Point(p[0] + r, p[1] - r)]
    return list(B), tri, r


def _check(A, B, touching: bool = False) -> RegionPair:
    a = validate_simple(A, merge_collinear=False)
    b = validate_simple(B, merge_collinear=False)
    a, b = normalize_clockwise(a), normalize_clockwise(b)
    mode = classify_containment(a, b)
    if mode is not ContainmentMode.STRICT_INTERIOR and not (touching and mode):
        raise GenerationFailure("generated pair is not strictly nested")
    return RegionPair(a, b, mode)


def random_nested_pair(spec: GenSpec, retries: int = 30) -> RegionPair:
    """A strictly nested pair for the GeneralNested, ConvexOuter or ConvexInner family."""
    if spec.family is Family.GRID_CONTINUUM:
        return grid_continuum_pair(spec)
    n, m = spec.inner_vertices, spec.outer_vertices
    for attempt in range(retries):
        rng = _rng(spec.seed, f"{spec.family.value}:{n}:{m}:{attempt}")
        try:
            if spec.family is Family.CONVEX_OUTER:
                B = _lattice_convex(m, rng, radius=max(8 * n, int(2 * m ** 1.5) + 4))
            else:
                B = list(random_simple_polygon(m, rng.getrandbits(63)).vertices)
            if spec.family is Family.CONVEX_INNER:
                C = _lattice_convex(n, rng)
                cr = max(max(abs(q[0]), abs(q[1])) for q in C)
                p, room = _roomy_point(B, rng)
                factor = int(math.ceil(2 * (cr + 1) / max(room, 0.25)))
                if factor > 1:
                    B = _scale(B, factor)
                    p = Point(p[0] * factor, p[1] * factor)
                A = [Point(p[0] + q[0], p[1] + q[1]) for q in C]
            else:
                B, A, r = _seed_triangle(B, rng)
                # scale so the grid can hold n vertices
                f = max(1, int(math.ceil(math.sqrt(n) / r)))
                if f > 1:
                    B, A = _scale(B, f), _scale(A, f)
                    r *= f
                A = _grow(A, B, n, rng, reach=max(2, r), budget=400)
                if A is None:
                    continue
                A = _inflate(A, B, rng, moves=max(600, 30 * n), reach=max(2, r))
            return _check(A, B)
        except (GenerationFailure, PolygonError):
            continue
    raise GenerationFailure(f"could not generate {spec.tag}")


# ---------------------------------------------------------------------------
# grid continuum

Cell = Tuple[int, int]


def _blob(cells: int, rng: random.Random, stickiness: float = 0.7) -> Set[Cell]:
    # growing mostly from the newest cell gives snaking blobs with deep bays
    blob = {(0, 0)}
    last = (0, 0)
    while len(blob) < cells:
        x, y = last if rng.random() < stickiness else rng.choice(sorted(blob))
        dx, dy = rng.choice(((1, 0), (-1, 0), (0, 1), (0, -1)))
        last = (x + dx, y + dy)
        blob.add(last)
    return blob


def _dilate(blob: Set[Cell]) -> Set[Cell]:
    return {(x + dx, y + dy) for x, y in blob for dx in (-1, 0, 1) for dy in (-1, 0, 1)}


def _pinched(blob: Set[Cell]) -> bool:
    for x, y in blob:
        for dx, dy in ((1, 1), (1, -1)):
            if (x + dx, y + dy) in blob and (x + dx, y) not in blob and (x, y + dy) not in blob:
                return True
    return False


def _has_hole(blob: Set[Cell]) -> bool:
    xs = [c[0] for c in blob]
    ys = [c[1] for c in blob]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    seen = {(x0, y0)}
    stack = [(x0, y0)]
    while stack:
        x, y = stack.pop()
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            c = (x + dx, y + dy)
            if x0 <= c[0] <= x1 and y0 <= c[1] <= y1 and c not in blob and c not in seen:
                seen.add(c)
                stack.append(c)
    return len(seen) + len(blob) != (x1 - x0 + 1) * (y1 - y0 + 1)


def cells_boundary(blob: Set[Cell]) -> List[Point]:
    """Clockwise frontier of a hole-free, pinch-free union of unit squares."""
    directed: Dict[Point, Point] = {}
    counts: Dict[Tuple[Point, Point], int] = {}
    for x, y in blob:
        # clockwise around the cell (x, y)-(x+1, y+1)
        ring = [(x, y), (x, y + 1), (x + 1, y + 1), (x + 1, y)]
        for i in range(4):
            e = (ring[i], ring[(i + 1) % 4])
            counts[e] = counts.get(e, 0) + 1
    for (a, b), c in counts.items():
        if (b, a) not in counts:
            directed[a] = b
    start = min(directed)
    loop = [start]
    cur = directed[start]
    while cur != start:
        loop.append(cur)
        cur = directed[cur]
    if len(loop) != len(directed):
        raise GenerationFailure("blob frontier is not a single loop")
    k = len(loop)
    corners = [Point(*loop[i]) for i in range(k)
               if _orient(loop[i - 1], loop[i], loop[(i + 1) % k]) != 0]
    return corners


def pair_from_cells(blob) -> RegionPair:
    """Inner and outer digitization frontiers of a set of unit cells ``(x, y)``."""
    blob = set(blob)
    outer = _dilate(blob)
    if _pinched(blob) or _has_hole(blob) or _pinched(outer) or _has_hole(outer):
        raise GenerationFailure("cells must form a hole-free blob without corner contacts")
    return _check(cells_boundary(blob), cells_boundary(outer))


def grid_continuum_pair(spec: GenSpec, retries: int = 200) -> RegionPair:
    """Isothetic pair: a blob of ``inner_vertices`` cells and its one-cell dilation.

    ``outer_vertices`` is not used to shape the pair; vertex counts follow
    from the blob.
    """
    cells = spec.inner_vertices
    for attempt in range(retries):
        rng = _rng(spec.seed, f"grid:{cells}:{attempt}")
        blob = _blob(cells, rng)
        outer = _dilate(blob)
        if _pinched(blob) or _has_hole(blob) or _pinched(outer) or _has_hole(outer):
            continue
        try:
            return pair_from_cells(blob)
        except (GenerationFailure, PolygonError):
            continue
    raise GenerationFailure(f"could not generate {spec.tag}")


def generate(spec: GenSpec) -> RegionPair:
    if spec.family is Family.GRID_CONTINUUM:
        return grid_continuum_pair(spec)
    return random_nested_pair(spec)


def write_corpus(specs: Sequence[GenSpec], directory) -> List[Tuple[Path, Path]]:
    """Write each pair as ``<tag>_A.poly`` / ``<tag>_B.poly`` under ``directory``."""
    from .io import write_polygon_file

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for spec in specs:
        pair = generate(spec)
        pa = out / f"{spec.tag}_A.poly"
        pb = out / f"{spec.tag}_B.poly"
        pa.write_bytes(write_polygon_file(pair.inner))
        pb.write_bytes(write_polygon_file(pair.outer))
        paths.append((pa, pb))
    return paths
