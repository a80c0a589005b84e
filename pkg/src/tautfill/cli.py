"""Command-line entry point.

    tautfill fill [PATH | --catalog NAME[:K]] [--qvol-only] [--no-verify] [--json OUT]
    tautfill sum SPEC SPEC [--faces a,b,c d,e,f] [--disjoint] [--json OUT]
    tautfill oracle [PATH | --catalog NAME[:K]] [--coeff-bound N] [--all] [--check]
    tautfill catalog list
    tautfill validate PATH

A SPEC is a readable file in the sphere text format, else ``NAME[:K]``.
Failures go to stderr as ``FAIL <check>: <detail>``; the exit code is 0
iff every requested check passed, 1 on a failed check, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import report, sphere
from .oracle import OracleError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def parse_catalog_spec(spec: str) -> tuple[str, int | None]:
    name, _, param = spec.partition(":")
    if not param:
        return name, None
    try:
        return name, int(param)
    except ValueError:
        raise sphere.SphereError(f"catalog parameter must be an integer, got {param!r}") from None


def load_spec(spec: str) -> sphere.SphereTriangulation:
    path = Path(spec)
    if path.is_file():
        return sphere.read(path)
    return sphere.catalog(*parse_catalog_spec(spec))


def _input(args) -> tuple[sphere.SphereTriangulation, str]:
    if args.catalog and args.path:
        raise sphere.SphereError("give either a path or --catalog, not both")
    if args.catalog:
        return sphere.catalog(*parse_catalog_spec(args.catalog)), args.catalog
    if args.path:
        return sphere.read(args.path), args.path
    raise sphere.SphereError("no input: give a path or --catalog NAME[:K]")


def _parse_face(text: str) -> tuple[int, int, int]:
    parts = text.replace(" ", "").split(",")
    if len(parts) != 3:
        raise sphere.SphereError(f"face {text!r} must be three comma-separated labels")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise sphere.SphereError(f"face {text!r} must be integer labels") from None


def _emit(rep: dict, args, lines: list[str]) -> int:
    for line in lines:
        print(line)
    for f in rep["failures"]:
        print(f"FAIL {f}", file=sys.stderr)
    if args.json:
        Path(args.json).write_text(json.dumps(rep, indent=2) + "\n")
    print("all checks passed" if not rep["failures"] else f"{len(rep['failures'])} check(s) failed")
    return EXIT_OK if not rep["failures"] else EXIT_FAIL


def _fill_lines(rep: dict) -> list[str]:
    lines = [f"instance      {rep['instance']}",
             f"v e f         {rep['v']} {rep['e']} {rep['f']}",
             f"maxdeg        {rep['maxdeg']}",
             f"coning bound  {rep['coning_bound']} (apex {rep['coning_vertex']})",
             f"qvol          {rep['qvol']}"]
    if "zvol" in rep:
        lines.append(f"zvol          {rep['zvol']}")
        lines.append(f"filling       {len(rep['filling'])} tets")
    if "shelling_summary" in rep:
        s = rep["shelling_summary"]
        lines.append(f"shelling      {s['succeeded']}/{s['initial_tets']} initial tets")
        lines.append(f"flag          {'OK' if rep['flag_summary'] else 'taboo found'}")
        lines.append(f"ball          {'OK' if rep['certificate']['ball']['passed'] else 'failed'}")
    return lines


def cmd_fill(args) -> int:
    sigma, label = _input(args)
    rep = report.fill_report(sigma, label, qvol_only=args.qvol_only, verify=not args.no_verify)
    return _emit(rep, args, _fill_lines(rep))


def cmd_sum(args) -> int:
    left, right = load_spec(args.inputs[0]), load_spec(args.inputs[1])
    if args.faces:
        f1, f2 = (_parse_face(f) for f in args.faces)
    else:
        f1, f2 = min(left.faces), min(right.faces)
    for s, f, name in ((left, f1, args.inputs[0]), (right, f2, args.inputs[1])):
        if tuple(sorted(f)) not in s.faces:
            raise sphere.SphereError(f"{list(f)} is not a face of {name}")
    joiner = " + " if args.disjoint else " # "
    rep = report.sum_report(left, f1, right, f2, joiner.join(args.inputs),
                            disjoint=args.disjoint, verify=not args.no_verify)
    lines = _fill_lines(rep) if "qvol" in rep else [f"instance      {rep['instance']}"]
    lines += [f"left          zvol {rep['left']['zvol']}  qvol {rep['left']['qvol']}",
              f"right         zvol {rep['right']['zvol']}  qvol {rep['right']['qvol']}",
              f"total         zvol {rep['total_zvol']}  qvol {rep['total_qvol']}",
              f"additive      zvol {rep['zvol_additive']}  qvol {rep['qvol_additive']}",
              f"split         {'OK' if rep['split']['ok'] else rep['split']['error']}"]
    return _emit(rep, args, lines)


def cmd_oracle(args) -> int:
    sigma, label = _input(args)
    rep = report.oracle_report(sigma, label, args.coeff_bound, args.all, args.check)
    lines = [f"instance      {rep['instance']}",
             f"oracle zvol   {rep['oracle_zvol']}  ({rep['nodes']} nodes)"]
    if args.all:
        lines.append(f"taut fillings {rep['taut_count']}")
    if args.check:
        lines.append(f"solver zvol   {rep['solver_zvol']}  agree {rep['agree']}")
    return _emit(rep, args, lines)


def cmd_catalog(args) -> int:
    for name in sphere.CATALOG:
        s = sphere.catalog(name)
        print(f"{name:13s} v={s.v:<3d} f={s.f:<3d} maxdeg={s.maxdeg}")
    return EXIT_OK


def cmd_validate(args) -> int:
    sigma = sphere.read(args.path)
    flag = sphere.is_flag(sigma)
    rep = {"instance": args.path, **sigma.stats, "maxdeg": sigma.maxdeg,
           "prime": sphere.is_prime(sigma), "flag": flag,
           "separating_triangles": [list(t) for t in sphere.separating_triangles(sigma)],
           "failures": []}
    lines = [f"valid sphere  v={sigma.v} e={sigma.e} f={sigma.f} maxdeg={sigma.maxdeg}",
             f"prime         {rep['prime']}"]
    return _emit(rep, args, lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tautfill", description="Minimum fillings of triangulated 2-spheres")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(sp):
        sp.add_argument("path", nargs="?", help="sphere text file")
        sp.add_argument("--catalog", metavar="NAME[:K]")
        sp.add_argument("--json", metavar="PATH")

    f = sub.add_parser("fill", help="qvol, zvol and ball certificate")
    with_input(f)
    f.add_argument("--qvol-only", action="store_true")
    f.add_argument("--no-verify", action="store_true")
    f.set_defaults(func=cmd_fill)

    s = sub.add_parser("sum", help="connected (or disjoint) sum with additivity and splitting")
    s.add_argument("inputs", nargs=2, metavar="SPEC")
    s.add_argument("--faces", nargs=2, metavar="A,B,C")
    s.add_argument("--disjoint", action="store_true")
    s.add_argument("--no-verify", action="store_true")
    s.add_argument("--json", metavar="PATH")
    s.set_defaults(func=cmd_sum)

    o = sub.add_parser("oracle", help="brute-force zvol for small spheres")
    with_input(o)
    o.add_argument("--coeff-bound", type=int, default=1)
    o.add_argument("--all", action="store_true", help="enumerate every taut filling")
    o.add_argument("--check", action="store_true", help="compare against the solver")
    o.set_defaults(func=cmd_oracle)

    c = sub.add_parser("catalog", help="named triangulations")
    c.add_argument("action", choices=["list"])
    c.set_defaults(func=cmd_catalog)

    v = sub.add_parser("validate", help="check a sphere text file")
    v.add_argument("path")
    v.add_argument("--json", metavar="PATH")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (sphere.SphereError, OracleError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
