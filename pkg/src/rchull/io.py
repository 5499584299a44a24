"""Polygon files and trace files.

A polygon file is ``POLY <count>`` followed by ``count`` lines ``x y``.
Coordinates are integers, decimals or ``a/b`` rationals and are read
exactly. Blank lines and lines starting with ``#`` are ignored (trailing
``#`` comments too). Written files use the canonical form: integers as
such, other rationals as reduced ``a/b``.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable, List, Union

from .geometry import Point, to_exact
from .polygon import Polygon, normalize_clockwise, validate_simple


class PolygonSyntaxError(SyntaxError):
    """Malformed polygon file; ``lineno`` is the 1-based offending line."""

    def __init__(self, msg: str, line: int):
        super().__init__(f"line {line}: {msg}")
        self.lineno = line
        self.line = line


def _text(data: Union[bytes, str]) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise PolygonSyntaxError("not UTF-8 text", 1) from exc
    return data


def parse_points(data: Union[bytes, str]) -> List[Point]:
    """Parse a polygon file into its raw vertex list, without validation."""
    lines = _text(data).splitlines()
    count = None
    pts: List[Point] = []
    for lineno, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if count is None:
            head = body.split()
            if len(head) != 2 or head[0] != "POLY":
                raise PolygonSyntaxError("expected header 'POLY <count>'", lineno)
            try:
                count = int(head[1])
            except ValueError:
                raise PolygonSyntaxError(f"bad vertex count {head[1]!r}", lineno) from None
            if count < 0:
                raise PolygonSyntaxError("negative vertex count", lineno)
            continue
        if len(pts) == count:
            raise PolygonSyntaxError(f"more than {count} vertex lines", lineno)
        fields = body.split()
        if len(fields) != 2:
            raise PolygonSyntaxError("expected two coordinates 'x y'", lineno)
        try:
            pts.append(Point(to_exact(fields[0]), to_exact(fields[1])))
        except (ValueError, ZeroDivisionError) as exc:
            raise PolygonSyntaxError(str(exc), lineno) from None
    if count is None:
        raise PolygonSyntaxError("missing header 'POLY <count>'", 1)
    if len(pts) < count:
        # the first missing vertex line would follow the last line read
        raise PolygonSyntaxError(
            f"expected {count} vertices, found {len(pts)}", len(lines) + 1)
    return pts


def parse_polygon_file(data: Union[bytes, str]) -> Polygon:
    """Parse, validate and orient clockwise. Validation errors pass through."""
    return normalize_clockwise(validate_simple(parse_points(data)))


def read_polygon(path) -> Polygon:
    return parse_polygon_file(Path(path).read_bytes())


def format_scalar(v) -> str:
    v = to_exact(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


def write_polygon_file(poly: Union[Polygon, Iterable]) -> bytes:
    verts = list(poly.vertices if isinstance(poly, Polygon) else poly)
    lines = [f"POLY {len(verts)}"]
    lines += [f"{format_scalar(p[0])} {format_scalar(p[1])}" for p in verts]
    return ("\n".join(lines) + "\n").encode("ascii")


def write_polygon(path, poly) -> None:
    Path(path).write_bytes(write_polygon_file(poly))


def write_trace(lines: Iterable[str]) -> bytes:
    return "".join(line + "\n" for line in lines).encode("ascii")


def read_trace(data: Union[bytes, str]) -> List[str]:
    return [ln for ln in _text(data).splitlines() if ln.strip()]
