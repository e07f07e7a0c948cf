"""Command-line interface: ``solvquot compute|verify|examples``.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 trivial action
where a slice was required, 5 iteration cap exceeded, 6 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .action import require_valid
from .dsl import emit_json, format_loc, load_result, parse
from .errors import DEFAULT_MAX_ITER, ParseError, SolvquotError, ValidationError
from .gallery import write_examples
from .pipeline import presentation, solvable_invariants
from .poly import format_poly
from .verify import numeric_spotcheck, verify_output

EXIT_OK = 0
EXIT_VERIFY = 6


def _max_iter(flag: Optional[int]) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("SOLVQUOT_MAX_ITER")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValidationError(f"SOLVQUOT_MAX_ITER must be an integer, got {env!r}") from None
        if value < 1:
            raise ValidationError("SOLVQUOT_MAX_ITER must be positive")
        return value
    return DEFAULT_MAX_ITER


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not UTF-8 text: {exc.reason}") from None


def text_summary(q, report=None, spot=None) -> str:
    spec = q.spec
    names = spec.ring.names("base")
    tnames = spec.ring.names("torus")
    lines = [f"c = {format_poly(q.c)}", f"weight = {q.weight.format(tnames)}",
             f"b = pi(c) = {format_loc(q.b)}", f"k = {q.k}, r = {q.r}"]
    for nm, b in zip(names, q.b_images):
        lines.append(f"pi({nm}) = {format_loc(b)}")
    for k, u in enumerate(q.u, start=1):
        lines.append(f"u{k} = {format_loc(u)}")
    for j, s in enumerate(q.s, start=1):
        lines.append(f"s{j} = {format_loc(s.elem)}, s{j}^-1 = {format_loc(s.inverse)}")
    vars_, rels = presentation(q)
    lines.append(f"presentation: K[{', '.join(vars_)}] / ({', '.join(format_poly(p) for p in rels)})")
    if report is not None:
        lines.append(report.summary())
    if spot is not None:
        lines.append(f"spotcheck: {spot.agree} agree, {spot.disagree} disagree, "
                     f"{spot.skipped} skipped (seed {spot.seed})")
        lines.extend(f"  {w}" for w in spot.witnesses)
    return "\n".join(lines) + "\n"


def cmd_compute(args) -> int:
    spec = require_valid(parse(_read(args.path)))
    try:
        q = solvable_invariants(spec, _max_iter(args.max_iter))
    except (ValueError, AssertionError) as exc:
        if isinstance(exc, SolvquotError):
            raise
        raise ValidationError(f"the action is inconsistent: {exc}") from None
    report = None if args.no_check else verify_output(spec, q)
    spot = numeric_spotcheck(spec, q, args.spotcheck, args.seed) if args.spotcheck else None
    if args.json:
        text = emit_json(q, report.checks() if report else None, spot.as_dict() if spot else None)
        if args.json == "-":
            sys.stdout.write(text)
        else:
            Path(args.json).write_text(text, encoding="utf-8")
    if args.text or not args.json:
        out = sys.stderr if args.json == "-" else sys.stdout
        out.write(text_summary(q, report, spot))
    failed = (report is not None and not report.ok) or (spot is not None and not spot.ok)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_verify(args) -> int:
    spec = parse(_read(args.spec))
    q, _ = load_result(_read(args.result), spec)
    report = verify_output(spec, q)
    sys.stdout.write(report.summary() + "\n")
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_examples(args) -> int:
    try:
        paths = write_examples(args.directory, args.force)
    except (FileExistsError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    for p in paths:
        sys.stdout.write(f"{p}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="solvquot",
                                 description="Invariants of solvable group actions in standard solvable form.")
    sub = ap.add_subparsers(dest="command", required=True)
    c = sub.add_parser("compute", help="compute invariants of a .sq spec")
    c.add_argument("path")
    c.add_argument("--json", metavar="PATH", help="write the JSON result ('-' for stdout)")
    c.add_argument("--text", action="store_true", help="also print the text summary")
    c.add_argument("--no-check", action="store_true", help="skip symbolic verification")
    c.add_argument("--spotcheck", type=int, default=0, metavar="N", help="random numeric trials")
    c.add_argument("--seed", type=int, default=0, metavar="S")
    c.add_argument("--max-iter", type=int, metavar="N", help="iteration cap per slice search")
    c.set_defaults(func=cmd_compute)
    v = sub.add_parser("verify", help="re-check a stored JSON result against its spec")
    v.add_argument("spec")
    v.add_argument("result")
    v.set_defaults(func=cmd_verify)
    e = sub.add_parser("examples", help="write the built-in example specs")
    e.add_argument("directory")
    e.add_argument("--force", action="store_true", help="overwrite an existing directory")
    e.set_defaults(func=cmd_examples)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SolvquotError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
