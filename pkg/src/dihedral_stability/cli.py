"""Command-line entry point.

Exit codes: 0 success, 1 verification failure or counterexample, 2 usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import os
import sys
from math import sqrt
from pathlib import Path

from .dihedral import GeneratingSet, canonical_form, negated
from .errors import InvalidArgumentError, NonGeneratingError, VerificationFailure
from .stability import check_sqrt_bound, lambda1, sqrt_presentation
from .survey import bound_attainment, reverify, scan_stabilizers, survey_csv, survey_lambda
from .verify import CLAIMS, run_claim
from .wordlength import bfs_lengths, sumset_lengths, word_lengths

OUTDIR_ENV = "DIHEDRAL_STABILITY_OUTDIR"

log = logging.getLogger("dihedral_stability")


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _resolve(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get(OUTDIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _table(rows: list[dict]) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    cells = [[_cell(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def _csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    cols = list(rows[0])
    buf.write(",".join(cols) + "\n")
    for r in rows:
        buf.write(",".join(_cell(r[c]) for c in cols) + "\n")
    return buf.getvalue()


def _cell(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def _flat(obj: dict) -> list[dict]:
    return [{"field": k, "value": json.dumps(v) if isinstance(v, (dict, list)) else v}
            for k, v in obj.items()]


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _require_set(args) -> GeneratingSet:
    if args.n is None or args.a is None or args.b is None:
        raise UsageError(f"{args.command} needs --n, --a and --b")
    try:
        return GeneratingSet(args.n, args.a, args.b)
    except InvalidArgumentError as exc:
        raise UsageError(str(exc)) from None


def cmd_lengths(args) -> tuple[str, int]:
    S = _require_set(args)
    n = S.n
    code = 0
    if args.engine == "both":
        table = sumset_lengths(n, S)
        agree = table.same_lengths(bfs_lengths(n, S))
        code = 0 if agree else 1
    else:
        table = word_lengths(n, S, args.engine)
        agree = None
    if args.format == "csv":
        return table.to_csv(), code
    rows = [dict(zip(("element", "rot", "refl_flag", "length"), r)) for r in table.rows()]
    if args.format == "table":
        return _table(rows), code
    out = table.to_json()
    if agree is not None:
        out["engine"] = "both"
        out["engines_agree"] = agree
    return _dump_json(out), code


def cmd_lambda1(args) -> tuple[str, int]:
    S = _require_set(args)
    code = 0
    if args.engine == "both":
        rep = lambda1(S.n, S, "sumset")
        agree = sumset_lengths(S.n, S).same_lengths(bfs_lengths(S.n, S))
        code = 0 if agree else 1
    else:
        rep = lambda1(S.n, S, args.engine)
        agree = None
    out = rep.to_json()
    out["negated_canonical"] = canonical_form(negated(S)).to_json()
    if agree is not None:
        out["engine"] = "both"
        out["engines_agree"] = agree
    if rep.lambda1 > rep.bound_n_half:
        code = 1
    if args.format == "csv":
        return rep.csv_header + "\n" + rep.csv_row() + "\n", code
    if args.format == "table":
        return _table(_flat(out)), code
    return _dump_json(out), code


def cmd_verify(args) -> tuple[str, int]:
    kwargs = {"engine": args.engine, "seed": args.seed, "samples": args.samples}
    rep = run_claim(args.claim, args.n_range, **kwargs)
    if not args.timing:
        rep.seconds = None
    code = 0 if rep.passed else 1
    if args.format == "json":
        return _dump_json(rep.to_json()), code
    rows = rep.details or rep.failures
    if args.format == "csv":
        return _csv(rows), code
    head = f"claim={rep.claim} passed={str(rep.passed).lower()} checked={rep.checked} failures={rep.failure_count}\n"
    return head + _table(rows), code


def cmd_scan(args) -> tuple[str, int]:
    lo, hi = args.n_range or (3, 200)
    result = scan_stabilizers(lo, hi, jobs=args.jobs, checkpoint=_resolve(args.checkpoint))
    out = result.to_json()
    bogus = reverify(result)
    out["reverified"] = not bogus
    code = 0 if result.confirmed and not bogus else 1
    if args.format == "csv":
        return _csv([c.to_json() for c in result.counterexamples]), code
    if args.format == "table":
        head = {k: v for k, v in out.items() if k != "counterexamples"}
        return _table(_flat(head)) + _table([c.to_json() for c in result.counterexamples]), code
    return _dump_json(out), code


def cmd_survey(args) -> tuple[str, int]:
    lo, hi = args.n_range or (3, 100)
    engine = "sumset" if args.engine == "both" else args.engine
    rows = survey_lambda(lo, hi, jobs=args.jobs, engine=engine)
    if args.format == "csv":
        return survey_csv(rows), 0
    if args.format == "table":
        return _table([r.to_json() for r in rows]), 0
    attained = {str(n): hit for n, hit in bound_attainment(rows).items()}
    return _dump_json({"rows": [r.to_json() for r in rows], "bound_attained": attained}), 0


def cmd_sqrt(args) -> tuple[str, int]:
    if args.n_range:
        lo, hi = args.n_range
    elif args.n is not None:
        lo = hi = args.n
    else:
        raise UsageError("sqrt needs --n or --n-range")
    engine = "bfs" if args.engine == "both" else args.engine
    rows = []
    code = 0
    for n in range(lo, hi + 1):
        try:
            S = sqrt_presentation(n)
        except InvalidArgumentError as exc:
            raise UsageError(str(exc)) from None
        res = check_sqrt_bound(n, engine)
        rows.append({"n": n, "a": S.a, "b": S.b, "max_length": res.max_length,
                     "bound": res.bound, "holds": res.holds,
                     "ratio": round(res.max_length / sqrt(n), 6)})
        code = code or (0 if res.holds else 1)
    if args.format == "csv":
        return _csv(rows), code
    if args.format == "table":
        return _table(rows), code
    return _dump_json(rows), code


COMMANDS = {
    "lengths": cmd_lengths,
    "lambda1": cmd_lambda1,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "survey": cmd_survey,
    "sqrt": cmd_sqrt,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dihedral-stability",
        description="Word lengths and lambda_1 for three-reflection presentations of D_n.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--n-range", type=parse_range, metavar="LO..HI")
    common.add_argument("--a", type=int)
    common.add_argument("--b", type=int)
    common.add_argument("--engine", choices=("sumset", "bfs", "both"), default="sumset")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("csv", "json", "table"))
    common.add_argument("--output", "-o", help=f"output file (relative paths resolve under ${OUTDIR_ENV} if set)")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("lengths", parents=[common], help="word-length table for one set")
    sub.add_parser("lambda1", parents=[common], help="lambda_1 report for one set")
    p = sub.add_parser("verify", parents=[common], help="verify one claim over a range")
    p.add_argument("--claim", choices=sorted(CLAIMS), required=True)
    p.add_argument("--samples", type=int, default=1000, help="random pairs per prime (cauchy-davenport)")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds in the report")
    p = sub.add_parser("scan", parents=[common], help="stabilizer scan over all canonical sets")
    p.add_argument("--checkpoint", help="JSON-lines file for resumable progress")
    sub.add_parser("survey", parents=[common], help="lambda_1 for every canonical set")
    sub.add_parser("sqrt", parents=[common], help="word lengths under offsets {0, 1, isqrt(n)}")
    return parser


DEFAULT_FORMAT = {"lengths": "csv", "lambda1": "json", "verify": "json", "scan": "json",
                  "survey": "csv", "sqrt": "csv"}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if args.format is None:
        args.format = DEFAULT_FORMAT[args.command]
    if args.n is not None and args.n_range is None and args.command in ("verify", "scan", "survey"):
        args.n_range = (args.n, args.n)
    try:
        text, code = COMMANDS[args.command](args)
    except (UsageError, InvalidArgumentError, NonGeneratingError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    path = _resolve(args.output)
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
