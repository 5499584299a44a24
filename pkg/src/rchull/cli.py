"""Command line interface.

Exit codes: 0 success, 1 validation failure, 2 input error, 3 iteration
guard tripped.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import io as pio
from .engine import NonTerminationError, compute
from .generate import Family, GenerationFailure, GenSpec, generate
from .polygon import PolygonError, make_region_pair
from .svg import render_svg
from .verify import verify

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INPUT = 2
EXIT_GUARD = 3


def _err(msg: str) -> None:
    print(f"rchull: {msg}", file=sys.stderr)


def _load_pair(inner: str, outer: str, touching: bool):
    a = pio.read_polygon(inner)
    b = pio.read_polygon(outer)
    return make_region_pair(a, b, allow_touching=touching)


def cmd_rch(args) -> int:
    try:
        pair = _load_pair(args.inner, args.outer, args.touching)
    except OSError as exc:
        _err(f"cannot read input: {exc}")
        return EXIT_INPUT
    except (SyntaxError, PolygonError) as exc:
        _err(f"invalid input: {exc}")
        return EXIT_INPUT
    t0 = time.perf_counter()
    try:
        result = compute(pair)
    except NonTerminationError as exc:
        _err(f"iteration guard tripped: {exc}")
        return EXIT_GUARD
    elapsed = time.perf_counter() - t0
    body = pio.write_polygon_file(result.polygon)
    if args.out:
        Path(args.out).write_bytes(body)
    elif not args.validate:
        sys.stdout.write(body.decode("ascii"))
    if args.trace:
        Path(args.trace).write_bytes(pio.write_trace(result.trace_lines()))
    if args.svg:
        Path(args.svg).write_bytes(render_svg(pair, result.polygon))
    for note in result.anomalies:
        _err(f"note: {note}")
    if args.validate or args.oracle:
        report = verify(pair, result.polygon, oracle=args.oracle,
                        candidate_cap=args.oracle_cap)
        sys.stdout.write(report.format())
        sys.stdout.write(f"TIME {elapsed:.6f}\n")
        if not report.passed:
            return EXIT_INVALID
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(args.seed, args.inner_n, args.outer_m, Family.parse(args.family))
        pair = generate(spec)
    except (ValueError, GenerationFailure) as exc:
        _err(str(exc))
        return EXIT_INPUT
    prefix = Path(args.out_prefix)
    if prefix.parent and not prefix.parent.exists():
        prefix.parent.mkdir(parents=True)
    pio.write_polygon(f"{prefix}_A.poly", pair.inner)
    pio.write_polygon(f"{prefix}_B.poly", pair.outer)
    print(f"{prefix}_A.poly {prefix}_B.poly {pair.containment_mode.value}")
    return EXIT_OK


FUZZ_FAMILIES = (Family.GENERAL_NESTED, Family.CONVEX_INNER, Family.CONVEX_OUTER,
                 Family.GRID_CONTINUUM)


def fuzz_specs(count: int, seed: int, small: bool) -> List[GenSpec]:
    """Deterministic mixture of families and sizes."""
    rng = random.Random(seed)
    specs = []
    for i in range(count):
        fam = FUZZ_FAMILIES[i % len(FUZZ_FAMILIES)]
        if fam is Family.GRID_CONTINUUM:
            n, m = rng.randint(3, 14 if small else 30), 4
        elif small:
            n, m = rng.randint(4, 10), rng.randint(4, 10)
        else:
            n, m = rng.randint(4, 40), rng.randint(4, 40)
        specs.append(GenSpec(rng.getrandbits(48), n, m, fam))
    return specs


def cmd_fuzz(args) -> int:
    oracle = args.oracle_cap is not None
    specs = fuzz_specs(args.count, args.seed, small=oracle)
    failures = guard = checked = 0
    for spec in specs:
        try:
            pair = generate(spec)
        except GenerationFailure as exc:
            _err(f"{spec.tag}: {exc}")
            return EXIT_INPUT
        try:
            result = compute(pair)
        except NonTerminationError:
            guard += 1
            print(f"GUARD {spec.tag}")
            continue
        rep = verify(pair, result.polygon, oracle=oracle,
                     candidate_cap=args.oracle_cap or 14, b_convex_samples=-1)
        if any(c.name == "oracle_vertex_set" for c in rep.checks):
            checked += 1
        if not rep.passed:
            failures += 1
            for c in rep.failures():
                print(f"FAIL {spec.tag} {c.name} {c.witness}")
    print(f"FUZZ count={len(specs)} failures={failures} guard={guard} oracle_checked={checked}")
    if guard:
        return EXIT_GUARD
    return EXIT_INVALID if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rchull",
                                description="Relative convex hull of nested simple polygons.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rch", help="compute the relative convex hull of a polygon pair")
    r.add_argument("--inner", required=True, help="inner polygon file")
    r.add_argument("--outer", required=True, help="outer polygon file")
    r.add_argument("--out", help="write the hull polygon here (default: stdout)")
    r.add_argument("--svg", help="write an SVG drawing here")
    r.add_argument("--trace", help="write the event trace here")
    r.add_argument("--validate", action="store_true", help="run the independent checks")
    r.add_argument("--oracle", action="store_true", help="also compare with brute force")
    r.add_argument("--oracle-cap", type=int, default=14,
                   help="largest candidate count for the brute force (default 14)")
    r.add_argument("--touching", action="store_true",
                   help="accept an inner polygon touching the outer frontier")
    r.set_defaults(func=cmd_rch)

    g = sub.add_parser("gen", help="generate a nested polygon pair")
    g.add_argument("--family", required=True,
                   help="GeneralNested, GridContinuum, ConvexOuter or ConvexInner")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--inner-n", type=int, required=True)
    g.add_argument("--outer-m", type=int, required=True)
    g.add_argument("--out-prefix", required=True)
    g.set_defaults(func=cmd_gen)

    f = sub.add_parser("fuzz", help="generate and check many instances")
    f.add_argument("--count", type=int, required=True)
    f.add_argument("--seed", type=int, required=True)
    f.add_argument("--oracle-cap", type=int, default=None,
                   help="compare with brute force when candidates fit this cap")
    f.set_defaults(func=cmd_fuzz)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
