"""Command-line interface.

Commands::

    proxcover verify    --scene S.json --condition exterior --radius R ...
    proxcover cover     --scene S.json --radius R --grid "lo:hi:step[x...]" ...
    proxcover tightness --n 2..10 --radius 1 --csv out.csv
    proxcover estimate  --scene S.json --radius RHO --radius-prime RP ...

Exit codes: 0 pass, 1 mathematical failure / witness found, 2 usage or
input error.  Reports are written atomically and are byte-identical for
identical configurations and seeds.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ProxcoverError, SceneError
from .conditions import check_condition
from .covering import GridSpec, cover_region, traces_to_jsonl
from .estimates import estimate_report
from .inscribed import tightness_sweep
from .scene import atomic_write_text, load_scene
from . import svg as svg_mod

PASS, FAIL, USAGE = 0, 1, 2


def _parse_n_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ValueError(f"empty n range '{text}'")
        return list(range(lo, hi + 1))
    return [int(text)]


def _cmd_verify(args) -> int:
    oracle = load_scene(args.scene)
    report = check_condition(oracle, args.condition, args.radius,
                             boundary_budget=args.samples,
                             normal_budget=args.normal_budget, seed=args.seed)
    text = report.to_json() + "\n"
    if args.json:
        atomic_write_text(args.json, text)
    else:
        sys.stdout.write(text)
    return PASS if report.passed else FAIL


def _cmd_cover(args) -> int:
    oracle = load_scene(args.scene)
    grid = GridSpec.parse(args.grid, oracle.dim)
    traces, summary = cover_region(oracle, args.radius, grid,
                                   normal_budget=args.normal_budget,
                                   seed=args.seed)
    if args.json:
        atomic_write_text(args.json, traces_to_jsonl(traces))
    if args.svg:
        if oracle.dim != 2:
            print("error: SVG output is only available for 2-D scenes", file=sys.stderr)
            return USAGE
        svg_mod.render_cover_svg(args.svg, oracle, traces, summary.failures)
    sys.stdout.write(json.dumps(summary.to_json_dict(), indent=2) + "\n")
    return PASS if summary.all_verified else FAIL


def _cmd_tightness(args) -> int:
    ns = _parse_n_range(args.n)
    if min(ns) < 2:
        raise SceneError("tightness needs n >= 2")
    rows = tightness_sweep(ns, r=args.radius)
    lines = ["n,r,formula_value,measured_value,abs_error"]
    for row in rows:
        lines.append("{n},{r},{formula_value:.12f},{measured_value:.12f},"
                     "{abs_error:.3e}".format(**row))
    text = "\n".join(lines) + "\n"
    if args.csv:
        atomic_write_text(args.csv, text)
    else:
        sys.stdout.write(text)
    worst = max(row["abs_error"] / row["formula_value"] for row in rows)
    return PASS if worst <= 1e-3 else FAIL


def _cmd_estimate(args) -> int:
    oracle = load_scene(args.scene)
    est = estimate_report(oracle, rho=args.radius, r_prime=args.radius_prime,
                          boundary_budget=args.samples, seed=args.seed)
    text = est.to_json() + "\n"
    if args.json:
        atomic_write_text(args.json, text)
    else:
        sys.stdout.write(text)
    return PASS if est.r_out is not None else FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proxcover",
        description="Sphere-condition checks and ball coverings of set complements.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scene=True):
        if scene:
            p.add_argument("--scene", required=True, help="scene JSON file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=2000,
                       help="boundary sample budget")
        p.add_argument("--normal-budget", type=int, default=16)
        p.add_argument("--json", default=None, help="write the report here")

    p = sub.add_parser("verify", help="check a sphere condition on a scene")
    common(p)
    p.add_argument("--condition", required=True,
                   choices=["exterior", "extended", "prox_regular"])
    p.add_argument("--radius", type=float, required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("cover", help="cover the exterior grid points with r/2-balls")
    common(p)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--grid", required=True,
                   help="axis spec lo:hi:step, several axes joined by 'x'")
    p.add_argument("--svg", default=None, help="render a 2-D scene to SVG")
    p.set_defaults(func=_cmd_cover)

    p = sub.add_parser("tightness", help="simplex arrangement: measured vs formula")
    p.add_argument("--n", required=True, help="single n or range a..b")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default=None, help="write rows here")
    p.set_defaults(func=_cmd_tightness)

    p = sub.add_parser("estimate", help="thin-boundary separation and radius bound")
    common(p)
    p.add_argument("--radius", type=float, required=True,
                   help="prox-regularity radius rho of cl(int S)")
    p.add_argument("--radius-prime", type=float, required=True,
                   help="extended-condition radius r'")
    p.set_defaults(func=_cmd_estimate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (SceneError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except ProxcoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
