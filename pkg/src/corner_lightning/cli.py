"""Batch front-end.

    corner-lightning fastdec-certify --n 10,100,1000 --grid 200 --out r.json
    corner-lightning lightning-sweep --target zsqrt --n 16,36,64 --out sweep.csv
    corner-lightning minimax-sweep --target pole2 --degrees 0-12 --out mm.csv

Exit codes: 0 success, 1 criteria failed, 2 usage error.  Flags override
values from an optional ``--config`` file of ``key = value`` lines.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import analysis, fastdec, minimax, targets
from .geometry import GeometryError, SectorDomain, annular_sector_grid, interior_compact_grid

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
INNER_BOUND_TOL = 1e-10


def _int_list(text: str) -> list[int]:
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def _read_config(path: str) -> dict:
    text = Path(path).read_text()
    cp = configparser.ConfigParser()
    if not text.lstrip().startswith("["):
        text = "[main]\n" + text
    cp.read_string(text)
    cfg = {}
    for section in cp.sections():
        for k, v in cp.items(section):
            cfg[k.replace("-", "_")] = v
    return cfg


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="corner-lightning", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="key = value file; flags take precedence")
        sp.add_argument("--out", help="output path")
        sp.add_argument("--format", choices=["csv", "json"], help="default: from --out extension")

    fd = sub.add_parser("fastdec-certify", help="certify the bounds on R_n over the reference square")
    common(fd)
    fd.add_argument("--n", help="comma-separated degree parameters")
    fd.add_argument("--grid", type=int, default=200, help="grid density per axis (>= 10)")

    ls = sub.add_parser("lightning-sweep", help="convergence sweep of the lightning approximant")
    common(ls)
    ls.add_argument("--target", help=f"one of {', '.join(sorted(targets.CATALOG))}")
    ls.add_argument("--rho", type=float, default=0.5)
    ls.add_argument("--theta", type=float, default=math.pi / 4, help="half-angle in radians")
    ls.add_argument("--sigma", type=float, default=2.0)
    ls.add_argument("--n", help="comma-separated, increasing")
    ls.add_argument("--boundary-count", type=int, default=400)
    ls.add_argument("--inner-rmin", type=float, default=0.1)
    ls.add_argument("--inner-rmax", type=float, default=0.25)
    ls.add_argument("--inner-angle", type=float, default=math.pi / 8)
    ls.add_argument("--inner-count", type=int, default=200)
    ls.add_argument("--margin", type=float, default=None, help="add a margin-based interior compact")
    ls.add_argument("--r2-floor", type=float, default=0.9)

    mm = sub.add_parser("minimax-sweep", help="discrete minimax estimates of E_n(f)")
    common(mm)
    mm.add_argument("--target", default="pole2", help=f"one of {', '.join(sorted(MINIMAX_TARGETS))}")
    mm.add_argument("--domain", choices=["circle", "sector"], default="circle")
    mm.add_argument("--samples", type=int, default=256)
    mm.add_argument("--rho", type=float, default=0.5)
    mm.add_argument("--theta", type=float, default=math.pi / 4)
    mm.add_argument("--degrees", help="e.g. 0-12 or 2,4,8")
    mm.add_argument("--fine-factor", type=int, default=4)
    mm.add_argument("--max-iterations", type=int, default=200)
    mm.add_argument("--tol", type=float, default=1e-3)
    p.subcommand_parsers = {"fastdec-certify": fd, "lightning-sweep": ls, "minimax-sweep": mm}
    return p


MINIMAX_TARGETS = {
    "pole2": lambda z: 1.0 / (z - 2.0),
    "poly3": lambda z: 1.0 + 2.0 * z - z**2 + 0.5 * z**3,
    "zsqrt": lambda z: np.sqrt(z),
    "exp": np.exp,
}


def _parse(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            cfg = _read_config(args.config)
        except (OSError, configparser.Error) as exc:
            parser.error(f"cannot read config: {exc}")
        sub = parser.subcommand_parsers[args.command]
        known = {a.dest for a in sub._actions}
        unknown = set(cfg) - known
        if unknown:
            parser.error(f"unknown config keys: {', '.join(sorted(unknown))}")
        # re-parse so explicit flags win; argparse type-converts string defaults
        sub.set_defaults(**cfg)
        args = parser.parse_args(argv)
    return parser, args


def _write(path, text):
    if path:
        Path(path).write_text(text)


def _fmt(args, default="csv"):
    if args.format:
        return args.format
    if args.out and args.out.endswith(".json"):
        return "json"
    return default


def cmd_fastdec_certify(parser, args) -> int:
    if not args.n:
        parser.error("--n is required")
    try:
        ns = _int_list(args.n)
    except ValueError:
        parser.error("--n must be a comma-separated list of integers")
    if not ns or any(n < 1 for n in ns):
        parser.error("--n values must be >= 1")
    if args.grid < 10:
        parser.error("--grid must be at least 10")
    reports = [fastdec.certify_bounds(n, args.grid) for n in ns]
    doc = {"grid": args.grid, "extension": "1/n", "reports": [r.to_dict() for r in reports]}
    _write(args.out, json.dumps(doc, indent=2) + "\n")
    ok = all(r.sup_inner <= 1 + INNER_BOUND_TOL for r in reports)
    for r in reports:
        print(f"n={r.n:<7d} supInner={r.sup_inner:.15f} supExtended={r.sup_extended:.6f} "
              f"c_hat(center)={r.probes[-1][1]:.6f}")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_lightning_sweep(parser, args) -> int:
    if not args.target:
        parser.error("--target is required")
    if args.target not in targets.CATALOG:
        parser.error(f"unknown target {args.target!r}")
    if not args.n:
        parser.error("--n is required")
    try:
        ns = _int_list(args.n)
    except ValueError:
        parser.error("--n must be a comma-separated list of integers")
    if not ns or any(n < 2 for n in ns) or any(b <= a for a, b in zip(ns, ns[1:])):
        parser.error("--n must be a nonempty increasing list of integers >= 2")
    try:
        domain = SectorDomain(args.rho, args.theta)
        interior = {"annulus": annular_sector_grid(args.inner_rmin, args.inner_rmax, args.inner_angle, args.inner_count)}
        if not (args.inner_rmax < args.rho and args.inner_angle < args.theta):
            raise GeometryError("interior compact must lie inside the sector")
        if args.margin is not None:
            interior["margin"] = interior_compact_grid(domain, args.margin, args.inner_count)
    except GeometryError as exc:
        parser.error(str(exc))
    if args.sigma <= 0:
        parser.error("--sigma must be positive")

    config = analysis.SweepConfig(
        target=targets.get_target(args.target),
        domain=domain,
        n_list=ns,
        sigma=args.sigma,
        boundary_count=args.boundary_count,
        interior=interior,
    )
    table = analysis.convergence_sweep(config)
    table.header = {
        "command": "lightning-sweep",
        "target": args.target,
        "rho": args.rho,
        "theta": args.theta,
        "sigma": args.sigma,
        "n": ns,
        "boundary_count": args.boundary_count,
        "inner": [args.inner_rmin, args.inner_rmax, args.inner_angle, args.inner_count],
        "margin": args.margin,
        "r2_floor": args.r2_floor,
        "min_fit_n": config.min_fit_n,
    }
    if _fmt(args) == "json":
        _write(args.out, table.to_json() + "\n")
    else:
        _write(args.out, table.to_csv())
        if args.out:
            _write(str(Path(args.out).with_suffix(".json")), table.to_json() + "\n")

    print(table.to_csv(), end="")
    ok = all(r.error is None for r in table.rows)
    for name, fit in table.fits.items():
        print(f"fit {name}: model={fit.model} slope={fit.slope:.6g} R2={fit.r_squared:.6f}")
        ok &= fit.slope < 0 and fit.r_squared >= args.r2_floor
    return EXIT_OK if ok else EXIT_FAILED


def cmd_minimax_sweep(parser, args) -> int:
    if args.target not in MINIMAX_TARGETS:
        parser.error(f"unknown target {args.target!r}")
    try:
        degrees = _int_list(args.degrees or "")
    except ValueError:
        parser.error("--degrees must be a list like 0-12 or 2,4,8")
    if not degrees or any(d < 0 for d in degrees):
        parser.error("--degrees must be a nonempty list of nonnegative integers")
    f = MINIMAX_TARGETS[args.target]
    rows = []
    ok = True
    for n in degrees:
        try:
            if args.domain == "circle":
                z = minimax.circle_samples(args.samples)
                fine = minimax.circle_samples(args.fine_factor * args.samples)
            else:
                dom = SectorDomain(args.rho, args.theta)
                z = minimax.domain_samples(dom, n)
                fine = minimax.domain_samples(dom, args.fine_factor * (n + 1) - 1)
            prob = minimax.MinimaxProblem.from_function(
                f, z, n, max_iterations=args.max_iterations, oscillation_tol=args.tol
            )
        except (ValueError, GeometryError) as exc:
            parser.error(str(exc))
        res = minimax.solve_minimax(prob)
        ratio = minimax.near_best_certificate(res, fine, f, samples=z)
        rows.append((n, res.error_estimate, ratio, res.converged))
        ok &= res.converged and ratio >= 1 - 1e-12

    lines = ["n,error_estimate,near_best_ratio,successive_ratio,converged"]
    prev = None
    for n, e, ratio, conv in rows:
        succ = "" if prev is None or e == 0 else f"{prev / e:.17g}"
        lines.append(f"{n},{e:.17g},{ratio:.17g},{succ},{int(conv)}")
        prev = e
    text = "\n".join(lines) + "\n"
    if _fmt(args) == "json":
        doc = {
            "header": {k: v for k, v in vars(args).items() if k not in ("config",)},
            "rows": [
                {"n": n, "error_estimate": e, "near_best_ratio": r, "converged": c} for n, e, r, c in rows
            ],
        }
        _write(args.out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        _write(args.out, text)
    print(text, end="")
    return EXIT_OK if ok else EXIT_FAILED


COMMANDS = {
    "fastdec-certify": cmd_fastdec_certify,
    "lightning-sweep": cmd_lightning_sweep,
    "minimax-sweep": cmd_minimax_sweep,
}


def main(argv=None) -> int:
    try:
        parser, args = _parse(argv)
        return COMMANDS[args.command](parser, args)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
