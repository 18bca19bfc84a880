"""harmconv command line: construct, check, reproduce, render.

Exit codes: 0 pass, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time
from pathlib import Path

from . import geometry as G
from . import mapspec, render, scenarios
from .errors import HarmconvError, NotLocallyUnivalent, SchemaError, UnknownScenario
from .series import order_for_radius

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def write_atomic(path, text):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(text, out):
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def read_spec(path, default_order=None):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    return mapspec.load(text, default_order)


def parse_complex(text):
    text = text.replace(" ", "")
    if "," in text:
        re, im = text.split(",")
        return complex(float(re), float(im))
    return complex(text)


def parse_radii(text):
    """An integer picks that many default levels; a comma list gives explicit radii."""
    if "," not in text:
        return int(text)
    return tuple(float(r) for r in text.split(","))


def grid_params(args):
    p = {"grid_angles": args.grid_angles}
    if args.grid_radii is not None:
        p["grid_radii"] = args.grid_radii
    return p


def add_grid_flags(parser):
    parser.add_argument("--grid-radii", type=parse_radii, default=None,
                        help="number of rings (default 24) or comma-separated radii")
    parser.add_argument("--grid-angles", type=int, default=256)
    parser.add_argument("--cert-tol", type=float, default=scenarios.CERT_TOL)
    parser.add_argument("-o", "--out", default=None, help="output file (default stdout)")


def cmd_construct(args):
    f = read_spec(args.spec)
    emit(mapspec.serialize_map(f), args.out)
    return EXIT_PASS


def _parse_kv(text):
    out = {}
    for item in filter(None, text.split(",")):
        key, _, value = item.partition("=")
        out[key.strip()] = value.strip()
    return out


def run_check(f, checks, grid, cert_tol):
    """Evaluate the requested checks on ``f``; returns a ScenarioResult."""
    start = time.perf_counter()
    res = scenarios.ScenarioResult("check", {"checks": list(checks), "order": f.order})
    report = None
    for item in checks:
        name, _, arg = item.partition(":")
        if name == "univalence" or (name == "convex_direction" and report is None):
            report = report or G.local_univalence(f, grid)
            res.univalence = report.as_dict()
            if name == "univalence":
                res.checks["univalence"] = report.passed
        if name == "univalence":
            continue
        if name == "convex_direction":
            alpha = float(arg or 0.0)
            try:
                cert = G.direction_convexity(f, alpha, grid, univalence=report)
            except NotLocallyUnivalent:
                res.checks[f"convex_direction:{alpha!r}"] = False
                res.reason = "not locally univalent, so no convexity certificate"
                continue
            res.certificates.append({"direction": alpha, "certificate": cert.as_dict()})
        elif name == "membership":
            family, _, rest = arg.partition(":")
            kv = _parse_kv(rest)
            if family == "halfplane":
                margin = G.halfplane_membership(
                    f, parse_complex(kv.get("a", "0")), float(kv.get("gamma", 0.0)), grid
                )
                res.inputs[f"membership:{arg}"] = margin
                res.checks[f"membership:{arg}"] = margin >= -cert_tol
            elif family == "strip":
                lo, hi = G.strip_membership(
                    f, parse_complex(kv.get("b", "0")), float(kv.get("beta", math.pi / 2)), grid
                )
                res.inputs[f"membership:{arg}"] = [lo, hi]
                res.checks[f"membership:{arg}"] = min(lo, hi) >= -cert_tol
            else:
                raise SchemaError(f"unknown membership family {family!r}")
        else:
            raise SchemaError(f"unknown check {item!r}")
    res.tolerances["cert_tol"] = cert_tol
    res.verdict = scenarios.recompute_verdict(res)
    res.runtime = time.perf_counter() - start
    return res


def _verdict_code(verdict):
    return EXIT_FAIL if verdict == "fail" else EXIT_PASS


def cmd_check(args):
    grid = scenarios.make_grid(grid_params(args))
    f = read_spec(args.spec, order_for_radius(grid.max_radius))
    res = run_check(f, args.check or ["univalence"], grid, args.cert_tol)
    emit(json.dumps(res.as_dict(), indent=2) + "\n", args.out)
    return _verdict_code(res.verdict)


OVERRIDES = ["a", "b", "a2", "gamma", "gamma2", "beta", "theta", "theta2", "n", "order", "seed"]


def cmd_reproduce(args):
    if args.list:
        for sid in scenarios.REGISTRY:
            print(sid)
        return EXIT_PASS
    if args.scenario is None:
        raise SchemaError("a scenario id is required")
    overrides = {k: getattr(args, k) for k in OVERRIDES}
    overrides.update(grid_params(args))
    overrides["cert_tol"] = args.cert_tol
    for item in args.set or []:
        key, _, value = item.partition("=")
        overrides[key] = json.loads(value)
    res = scenarios.run_scenario(args.scenario, overrides)
    emit(json.dumps(res.as_dict(), indent=2) + "\n", args.out)
    return _verdict_code(res.verdict)


def cmd_render(args):
    f = read_spec(args.spec, order_for_radius(args.max_radius))
    style = {"rings": args.rings, "rays": args.rays, "samples": args.samples, "max_radius": args.max_radius}
    svg, table = render.render(f, style)
    out = Path(args.out)
    write_atomic(out, svg)
    write_atomic(Path(args.csv) if args.csv else out.with_suffix(".csv"), table)
    return EXIT_PASS


def build_parser():
    parser = argparse.ArgumentParser(prog="harmconv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a map from a JSON spec and print its coefficients")
    p.add_argument("spec", help="MapSpec JSON file, or - for stdin")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="run geometry checks on a map")
    p.add_argument("spec")
    p.add_argument("--check", action="append",
                   help="univalence | convex_direction:ALPHA | membership:halfplane:a=..,gamma=.. "
                        "| membership:strip:b=..,beta=.. (repeatable)")
    add_grid_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reproduce", help="run a named theorem scenario")
    p.add_argument("scenario", nargs="?")
    p.add_argument("--list", action="store_true", help="print the scenario ids")
    for name in ("a", "b", "a2"):
        p.add_argument(f"--{name}", type=parse_complex, default=None)
    for name in ("gamma", "gamma2", "beta", "theta", "theta2"):
        p.add_argument(f"--{name}", type=float, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--set", action="append", metavar="KEY=JSON", help="any other scenario parameter")
    add_grid_flags(p)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("render", help="draw images of circles and rays as SVG plus a CSV")
    p.add_argument("spec")
    p.add_argument("--out", required=True, help="SVG path; the CSV goes next to it")
    p.add_argument("--csv", default=None)
    p.add_argument("--rings", type=int, default=render.DEFAULT_STYLE["rings"])
    p.add_argument("--rays", type=int, default=render.DEFAULT_STYLE["rays"])
    p.add_argument("--samples", type=int, default=render.DEFAULT_STYLE["samples"])
    p.add_argument("--max-radius", type=float, default=render.DEFAULT_STYLE["max_radius"])
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    try:
        return args.func(args)
    except (HarmconvError, ValueError, KeyError) as exc:
        kind = "unknown scenario" if isinstance(exc, UnknownScenario) else type(exc).__name__
        print(f"harmconv: {kind}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"harmconv: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
