"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 unreadable or invalid spec,
3 numerically inconclusive verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from symaction.analyze.core import analyze
from symaction.analyze.reports import REPORTS
from symaction.catalog import catalog_entries
from symaction.liealg import DEFAULT_TOL, Tolerance
from symaction.specfile import SpecError, load_action

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def cmd_catalog(args, out) -> int:
    entries = list(catalog_entries())
    if args.json:
        rows = [{"name": n, "kind": k, "dim": d} for n, k, d in entries]
        out.write(json.dumps(rows, sort_keys=True, indent=2) + "\n")
        return EXIT_OK
    for name, kind, dim in entries:
        out.write(f"{name} dim={dim} [{kind}]\n")
    out.write(f"{len(entries)} entries\n")
    return EXIT_OK


def cmd_analyze(args, out, err) -> int:
    try:
        action, spec = load_action(args.file)
    except SpecError as exc:
        err.write(f"{args.file}: {exc}\n")
        return EXIT_PARSE
    tol = spec.tol or DEFAULT_TOL
    if args.tol is not None:
        try:
            tol = replace(tol, rel_eps=args.tol, abs_eps=min(tol.abs_eps, args.tol))
        except ValueError as exc:
            err.write(f"--tol: {exc}\n")
            return EXIT_PARSE
    seed = args.seed if args.seed is not None else (spec.seed if spec.seed is not None else 0)
    report = analyze(action, seed=seed, tol=tol)
    if args.json:
        out.write(json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n")
    else:
        out.write(report.to_text() + "\n")
    return EXIT_INCONCLUSIVE if report.inconclusive else EXIT_OK


def cmd_verify(args, out) -> int:
    names = list(REPORTS) if args.which == "all" else [args.which]
    reports = [REPORTS[n](args.seed) for n in names]
    if args.json:
        payload = {n: r.to_dict() for n, r in zip(names, reports)}
        out.write(json.dumps(payload, sort_keys=True, indent=2, default=str) + "\n")
    else:
        out.write("\n\n".join(r.to_text() for r in reports) + "\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def _tol_value(text):
    v = float(text)
    Tolerance(v, min(v, DEFAULT_TOL.abs_eps))  # validates the range
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symaction", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", help="list catalog algebras, embeddings and involutions")
    c.add_argument("--json", action="store_true")

    a = sub.add_parser("analyze", help="analyze the action described by a spec file")
    a.add_argument("file")
    a.add_argument("--seed", type=int, default=None)
    a.add_argument("--tol", type=_tol_value, default=None, help="relative rank cutoff")
    a.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="run a batch verification report")
    v.add_argument("which", choices=[*REPORTS, "all"])
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", action="store_true")
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    if getattr(args, "seed", None) is not None and args.seed < 0:
        err.write("--seed must be non-negative\n")
        return EXIT_PARSE
    if args.command == "catalog":
        return cmd_catalog(args, out)
    if args.command == "analyze":
        return cmd_analyze(args, out, err)
    return cmd_verify(args, out)


if __name__ == "__main__":
    sys.exit(main())
