"""Command-line front end: build, verify, census, oracle, invariants."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import alexander, census, construct, invariants, twobridge
from .diagram import Diagram, DiagramError, export, parse

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTEGRITY = 0, 1, 2, 3

# verify runs the expansion search only where it is quick
ORACLE_MAX_N = 3


class UsageError(Exception):
    pass


def _emit(payload, out: str | None) -> None:
    if isinstance(payload, dict):
        text = json.dumps({"schema_version": SCHEMA_VERSION, **payload}, sort_keys=True, indent=2)
    else:
        text = payload
    text = text.rstrip("\n") + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _positive(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _tileset(args) -> construct.TileSet:
    """Load the tile file named by ``--tile-file``, the env override or the embedded default."""
    path = getattr(args, "tile_file", None) or os.environ.get(construct.TILE_ENV)
    return construct.load_tiles(path)


# ---------------------------------------------------------------------------
# verify


def verify_row(n: int, tile_path: str | None = None) -> dict:
    tiles = construct.load_tiles(tile_path)
    d, seifert = construct.build_link(n, tiles)
    g = construct.build_graph(n, tiles)
    comps = census.components(g)
    ncomp, _ = d.components()
    row: dict = {
        "n": n,
        "crossings": d.crossing_count,
        "knot": ncomp == 1,
        "alternating": invariants.is_alternating(d),
        "special": invariants.is_special(d),
        "reduced": invariants.is_reduced(d),
        "chi": seifert.chi,
        "graph_components": len(comps),
        "graph_component_shapes": sorted({c.shape for c in comps}),
    }
    row["prime"] = row["reduced"] and invariants.diagram_prime(d)
    failures = []
    if row["knot"]:
        row["genus"] = invariants.genus(d)
        delta = alexander.alexander_poly(d)
        row["alexander_span"] = delta.span()
        row["alexander_at_1"] = delta(1)
        row["alexander_palindromic"] = delta.is_palindromic()
        try:
            row["determinant"] = alexander.determinant(d)
        except DiagramError as exc:
            row["determinant"] = None
            failures.append(str(exc))
    try:
        row["census_count"] = census.count_surfaces(n)
    except census.CensusError as exc:
        row["census_count"] = None
        failures.append(str(exc))
    if n <= ORACLE_MAX_N and row["knot"] and row["census_count"] is not None:
        report = twobridge.cross_check_invariants(
            n, delta, abs(delta(-1)), row["census_count"])
        row["oracle_count"] = report.count
        row["oracle_agree"] = report.agree

    expected = {
        "knot": True,
        "alternating": True,
        "special": True,
        "reduced": True,
        "prime": True,
        "chi": 1 - 2 * n,
        "genus": n,
        "graph_components": 2 * n - 1,
        "graph_component_shapes": [(2, 2)],
        "census_count": 2 ** (2 * n - 1),
        "alexander_span": 2 * n,
        "alexander_palindromic": True,
    }
    for key, want in expected.items():
        if row.get(key) != want:
            failures.append(f"{key} = {row.get(key)!r}, expected {want!r}")
    if row.get("alexander_at_1") not in (1, -1):
        failures.append(f"alexander_at_1 = {row.get('alexander_at_1')!r}, expected ±1")
    if row.get("oracle_agree") is False:
        failures.append(f"oracle count {row['oracle_count']} disagrees with census")
    row["graph_component_shapes"] = [list(s) for s in row["graph_component_shapes"]]
    row["failures"] = failures
    row["pass"] = not failures
    return row


def cmd_verify(args) -> int:
    tile_path = args.tile_file or os.environ.get(construct.TILE_ENV)
    construct.load_tiles(tile_path)
    ns = range(1, args.n_max + 1)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(verify_row, ns, [tile_path] * len(ns)))
    else:
        rows = [verify_row(n, tile_path) for n in ns]
    rows.sort(key=lambda r: r["n"])
    ok = all(r["pass"] for r in rows)
    _emit({"command": "verify", "n_max": args.n_max, "rows": rows, "pass": ok}, args.out)
    if not ok:
        bad = next(r for r in rows if not r["pass"])
        print(f"verify: row n={bad['n']} failed: {'; '.join(bad['failures'])}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# other commands


def cmd_build(args) -> int:
    tiles = _tileset(args)
    d, _ = construct.build_link(args.n, tiles)
    _emit(export(d, args.format), args.out)
    return EXIT_OK


def cmd_census(args) -> int:
    _tileset(args)
    try:
        report = census.census_report(args.n)
    except census.CensusError as exc:
        print(f"census: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    report["component_shapes"] = [list(s) for s in report["component_shapes"]]
    _emit({"command": "census", **report}, args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.n is not None:
        if args.p is not None or args.q is not None:
            raise UsageError("give either --n or --p/--q, not both")
        _tileset(args)
        try:
            report = twobridge.cross_check(args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        body = report.to_json()
        ok = report.agree is True
    else:
        if args.p is None or args.q is None:
            raise UsageError("oracle needs --n or both --p and --q")
        try:
            f = twobridge.Fraction(args.p, args.q)
        except (ValueError, twobridge.ExpansionError) as exc:
            raise UsageError(str(exc)) from None
        report = twobridge.fraction_report(f)
        body = report.to_json()
        ok = report.error is None
    _emit({"command": "oracle", **body}, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def describe(d: Diagram) -> dict:
    """Invariant summary of an arbitrary diagram."""
    ncomp, _ = d.components()
    seifert = invariants.seifert_circles(d)
    out: dict = {
        "crossings": d.crossing_count,
        "components": ncomp,
        "writhe": d.writhe(),
        "seifert_circles": seifert.s,
        "chi": seifert.chi,
        "alternating": invariants.is_alternating(d),
        "special": invariants.is_special(d),
        "reduced": invariants.is_reduced(d),
    }
    if d.is_connected() and out["reduced"]:
        out["prime"] = invariants.diagram_prime(d)
    else:
        out["prime"] = None
    if ncomp == 1:
        delta = alexander.alexander_poly(d)
        out["genus"] = invariants.genus(d)
        out["alexander"] = delta.to_json()
        out["alexander_text"] = str(delta)
        out["determinant"] = alexander.determinant(d)
    return out


def cmd_invariants(args) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from None
    fmt = args.format or ("pd" if text.lstrip().startswith("PD") else "json")
    try:
        d = parse(text, fmt)
    except (DiagramError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot parse {args.file}: {exc}") from None
    try:
        body = describe(d)
    except DiagramError as exc:
        raise UsageError(f"invalid diagram: {exc}") from None
    _emit({"command": "invariants", "file": Path(args.file).name, **body}, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="knotforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--tile-file", help="tile data file (default: embedded)")

    p = sub.add_parser("build", help="print the diagram of L_n")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--format", choices=["pd", "gauss", "dt", "json"], default="json")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check every stated property of L_1..L_n_max")
    p.add_argument("--n-max", type=_positive, default=8)
    p.add_argument("--jobs", type=_positive, default=1)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census", help="count minimal genus Seifert surfaces of L_n")
    p.add_argument("--n", type=_positive, required=True)
    common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("oracle", help="two-bridge continued fraction cross-check")
    p.add_argument("--n", type=_positive)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("invariants", help="invariants of a diagram file (JSON or PD)")
    p.add_argument("file")
    p.add_argument("--format", choices=["json", "pd"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_invariants)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"knotforge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except construct.ConstructionError as exc:
        print(f"knotforge: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY


if __name__ == "__main__":
    sys.exit(main())
