"""Command line entry point: ``cdgforge run|verify|describe``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import scenario as scn
from .corpus import standard_corpus
from .field import _is_prime
from .verify import SUITES, Options, WindowInsufficient, run_suites

log = logging.getLogger("cdgforge")


def _write_results(path: str | None, text: str):
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text)


def cmd_run(args) -> int:
    try:
        with open(args.file) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot parse {args.file}: {exc}", file=sys.stderr)
        return scn.EXIT_PARSE
    if isinstance(raw, dict):
        if args.field is not None:
            raw["field"] = args.field
        if args.seed is not None:
            raw["seed"] = args.seed
        if args.window is not None:
            for cmd in raw.get("commands", []):
                if isinstance(cmd, dict) and cmd.get("op") in ("sbar", "bar_complex", "weakly_trivial"):
                    cmd.setdefault("args", {}).setdefault("window", list(args.window))
    try:
        sc = scn.build(raw)
        rep, lines = scn.run(sc, only=args.only)
    except scn.ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    for line in lines:
        print(line)
    nfail = len(rep.failures)
    print(f"{len(rep.records)} assertions, {nfail} failed")
    _write_results(args.results, rep.dumps())
    return scn.EXIT_ASSERT if nfail else scn.EXIT_OK


def cmd_verify(args) -> int:
    C = standard_corpus(args.field or 3)
    opts = Options(seed=args.seed if args.seed is not None else 7, random_count=args.random_count,
                   window=tuple(args.window) if args.window else None)
    try:
        rep = run_suites(args.suite, C, opts)
    except WindowInsufficient as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return scn.EXIT_INVALID
    for suite, counts in rep.summary().items():
        print(f"{suite:<12} pass {counts['pass']:>4}  fail {counts['fail']:>3}")
    for r in rep.failures:
        print(f"FAIL {r['id']}  lhs={r['lhs_dims']} rhs={r['rhs_dims']}")
    _write_results(args.results, rep.dumps())
    return scn.EXIT_ASSERT if rep.failures else scn.EXIT_OK


def cmd_describe(args) -> int:
    C = standard_corpus(args.field or 3)
    try:
        info = C.describe(args.object)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return scn.EXIT_INVALID
    print(json.dumps(info, indent=2, sort_keys=True))
    return scn.EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, default=None, metavar="P", help="prime characteristic (default 3)")
    common.add_argument("--seed", type=int, default=None, metavar="N")
    common.add_argument("--window", type=int, nargs=2, default=None, metavar=("LO", "HI"))
    common.add_argument("--random-count", type=int, default=None, metavar="N")
    common.add_argument("--results", default="results.json", metavar="PATH",
                        help="machine-readable results file ('-' to skip)")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="cdgforge", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("run", parents=[common], help="execute a scenario file")
    p.add_argument("file")
    p.add_argument("--only", default=None, metavar="TAG", help="run only commands with this op or tag")
    p.set_defaults(func=cmd_run)
    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=list(SUITES) + ["all"])
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("describe", parents=[common], help="describe a standard corpus object")
    p.add_argument("object")
    p.set_defaults(func=cmd_describe)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.field is not None and not _is_prime(args.field):
        print(f"error: --field {args.field} is not prime", file=sys.stderr)
        return scn.EXIT_PARSE
    if args.random_count is not None and args.random_count < 0:
        print("error: --random-count must be >= 0", file=sys.stderr)
        return scn.EXIT_PARSE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
