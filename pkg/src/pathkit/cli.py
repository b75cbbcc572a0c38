"""``pathkit`` command-line front end.

Exit codes: 0 success/true/pass, 1 false/fail, 2 usage or validation error,
3 budget exhausted or oracle verdict unknown.  Machine output goes to
stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import term as T
from .campaigns import LAWS, CampaignConfig, run_campaign
from .errors import (
    FuelExhausted,
    Incomposable,
    InvalidPath,
    NotBetaEtaEqual,
    OracleBudgetExhausted,
    PathkitError,
    SequenceError,
    ShapeMismatch,
    TermSyntaxError,
)
from .path import parse_path, path_between, print_path, show_path
from .rewrite import DEFAULT_PATH_FUEL, RULE_SETS, normalize_rw, rw_eq
from .twocell import DEFAULT_ORACLE_CAP, hcomp, infer_sequence

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would sys.exit(2) itself
        raise _UsageError(f"{self.prog}: {message}")


class _UsageError(Exception):
    pass


def _where(pos: Sequence[str]) -> str:
    return ".".join(pos) or "root"


def _seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("PATHKIT_SEED")
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise _UsageError(f"PATHKIT_SEED must be an integer, got {env!r}") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _non_negative(text: str) -> int:
    v = int(text) if text.lstrip("-").isdigit() else None
    if v is None or v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pathkit", description="Computational paths over the untyped lambda calculus.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="parse a term and print it in structural form")
    p.add_argument("term")

    p = sub.add_parser("reduce", help="beta-eta normalize a term")
    p.add_argument("term")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--fuel", type=_positive, default=T.DEFAULT_TERM_FUEL)

    p = sub.add_parser("path", help="build a path between two beta-eta-equal terms")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--style", choices=("paper", "structural"), default="paper")
    p.add_argument("--fuel", type=_positive, default=T.DEFAULT_TERM_FUEL)

    p = sub.add_parser("normalize", help="rw-normalize a path")
    p.add_argument("path")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--fuel", type=_positive, default=DEFAULT_PATH_FUEL)
    p.add_argument("--rules", choices=sorted(RULE_SETS), default="groupoid")

    p = sub.add_parser("eq", help="decide rw-equality of two paths")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--fuel", type=_positive, default=DEFAULT_PATH_FUEL)
    p.add_argument("--rules", choices=sorted(RULE_SETS), default="groupoid")

    p = sub.add_parser("hcomp", help="horizontal composite of two rw-sequences (paths separated by ';')")
    p.add_argument("alpha")
    p.add_argument("theta")

    p = sub.add_parser("check", help="run a randomized law campaign and emit a JSON report")
    p.add_argument("law", choices=LAWS)
    p.add_argument("--samples", type=_non_negative, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--depth", type=_positive, default=None)
    p.add_argument("--fuel", type=_positive, default=DEFAULT_PATH_FUEL)
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.add_argument("--text", action="store_true", help="one-line summary instead of JSON")
    p.add_argument("--oracle", action="store_true", help="oracle verdict on every sample")
    p.add_argument("--oracle-subsample", type=_non_negative, default=None)
    p.add_argument("--oracle-cap", type=_positive, default=DEFAULT_ORACLE_CAP)
    p.add_argument("--rules", choices=sorted(RULE_SETS), default="groupoid")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--timing", action="store_true", help="include elapsed_ms (breaks byte-identical output)")
    p.add_argument("--out", default=None, help="also write the JSON report to this file")
    return ap


# ---------------------------------------------------------------------------
# commands

def _cmd_parse(args, out) -> int:
    print(T.show_term(T.parse_term(args.term)), file=out)
    return EXIT_OK


def _cmd_reduce(args, out) -> int:
    trace = T.normalize_term(T.parse_term(args.term), args.fuel)
    if args.trace:
        cur = trace.start
        print(T.show_term(cur), file=out)
        for c in trace.steps:
            cur = c.result
            print(f"  {c.kind}@{_where(c.position)} {T.show_term(cur)}", file=out)
    else:
        print(T.show_term(trace.final), file=out)
    return EXIT_OK


def _cmd_path(args, out) -> int:
    p = path_between(T.parse_term(args.source), T.parse_term(args.target), args.fuel)
    print(print_path(p, args.style), file=out)
    return EXIT_OK


def _cmd_normalize(args, out) -> int:
    p = parse_path(args.path)
    nf, trace = normalize_rw(p, args.fuel, RULE_SETS[args.rules])
    if args.trace:
        print(show_path(p), file=out)
        for s in trace:
            print(f"  {s.rule}@{_where(s.position)} {show_path(s.after)}", file=out)
    else:
        print(show_path(nf), file=out)
    return EXIT_OK


def _cmd_eq(args, out) -> int:
    ok = rw_eq(parse_path(args.left), parse_path(args.right), args.fuel, RULE_SETS[args.rules])
    print("true" if ok else "false", file=out)
    return EXIT_OK if ok else EXIT_FALSE


def _sequence(text: str):
    parts = [s.strip() for s in text.split(";")]
    if any(not s for s in parts):
        raise _UsageError("empty path in sequence")
    return infer_sequence([parse_path(s) for s in parts])


def _cmd_hcomp(args, out) -> int:
    cell = hcomp(_sequence(args.alpha), _sequence(args.theta))
    print(show_path(cell.first), file=out)
    for s, e in zip(cell.steps, cell.entries[1:]):
        arrow = "▷" if s.direction == "forward" else "◁"
        print(f"  {arrow} {s.rule}@{_where(s.position)} {show_path(e)}", file=out)
    return EXIT_OK


def _cmd_check(args, out) -> int:
    cfg = CampaignConfig(
        law=args.law,
        samples=args.samples,
        seed=_seed(args.seed),
        depth=args.depth,
        fuel=args.fuel,
        oracle_all=args.oracle,
        oracle_subsample=args.oracle_subsample,
        oracle_cap=args.oracle_cap,
        rule_set=args.rules,
    )
    report = run_campaign(cfg, args.workers)
    text = report.to_json(timing=args.timing)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(report.summary() if args.text else text, file=out)
    if not report.passed:
        return EXIT_FALSE
    return EXIT_BUDGET if report.unknown else EXIT_OK


COMMANDS = {
    "parse": _cmd_parse,
    "reduce": _cmd_reduce,
    "path": _cmd_path,
    "normalize": _cmd_normalize,
    "eq": _cmd_eq,
    "hcomp": _cmd_hcomp,
    "check": _cmd_check,
}


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except _UsageError as exc:
        print(str(exc), file=err)
        return EXIT_USAGE
    except TermSyntaxError as exc:
        print(f"syntax error: {exc}", file=err)
        return EXIT_USAGE
    except (InvalidPath, SequenceError, ShapeMismatch, Incomposable, ValueError) as exc:
        print(f"invalid input: {exc}", file=err)
        return EXIT_USAGE
    except NotBetaEtaEqual as exc:
        print(f"not beta-eta-equal: {exc}", file=err)
        return EXIT_FALSE
    except (FuelExhausted, OracleBudgetExhausted) as exc:
        print(f"budget exhausted: {exc}", file=err)
        return EXIT_BUDGET
    except PathkitError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except OSError as exc:
        print(f"i/o error: {exc}", file=err)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
