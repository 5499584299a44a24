"""Relative convex hulls of simple polygons nested in simple polygons."""

from .engine import NonTerminationError, compute, relative_convex_hull, replay_trace
from .generate import Family, GenSpec, generate
from .geometry import Location, Point, Turn, orient_det, point_in_polygon, to_exact, turn_class
from .io import read_polygon, write_polygon
from .melkman import brute_force_hull, melkman
from .polygon import (
    ContainmentMode,
    InvalidRegionPair,
    Polygon,
    PolygonError,
    RegionPair,
    SelfIntersection,
    make_region_pair,
    validate_simple,
)
from .verify import VerificationReport, brute_force_rch, verify

__all__ = [
    "ContainmentMode", "Family", "GenSpec", "InvalidRegionPair", "Location", "NonTerminationError", "Point",
    "Polygon", "PolygonError", "RegionPair", "SelfIntersection", "Turn",
    "VerificationReport", "brute_force_hull", "brute_force_rch", "compute", "generate",
    "make_region_pair", "melkman", "orient_det", "point_in_polygon",
    "read_polygon", "relative_convex_hull", "replay_trace", "to_exact", "turn_class",
    "validate_simple", "verify", "write_polygon",
]
__version__ = "0.1.0"
