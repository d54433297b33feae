"""Command-line front end.

Exit codes: 0 ok, 2 input error, 3 closed-form/oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import criteria, verify
from .analysis import OracleTooLarge, analyze_connection, check_oracle_size, render_text
from .cayley import ConnectionSet, load_connection, validate
from .extraspecial import ExtraspecialGroup, IsoType
from .gf2core import ConfigurationError, format_spread, read_spread_file, regular_spread, validate_spread
from .search import search
from .walk import DEFAULT_TOL

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DISAGREE = 3

MAX_VERIFY_N = 4


class InputError(Exception):
    pass


def _emit(payload: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _dyadic(text: str) -> criteria.DyadicTime:
    try:
        return criteria.DyadicTime.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _connection_from_args(args: argparse.Namespace) -> ConnectionSet:
    if args.file:
        try:
            c = load_connection(args.file)
        except (OSError, ValueError) as exc:
            raise InputError(str(exc)) from None
        if args.n is not None and args.n != c.n:
            raise InputError(f"{args.file}: file has n={c.n} but --n {args.n} was given")
        return c
    if args.n is None:
        raise InputError("--n is required unless --file is given")
    classes = [s for s in (args.classes or "").split(",") if s.strip()]
    try:
        return ConnectionSet.from_strings(classes, args.include_z, n=args.n)
    except ValueError as exc:
        raise InputError(f"--classes: {exc}") from None


def _check_verify_size(group: ExtraspecialGroup) -> None:
    if group.n > MAX_VERIFY_N:
        raise InputError(f"--verify supports n <= {MAX_VERIFY_N}")
    try:
        check_oracle_size(group)
    except OracleTooLarge as exc:
        raise InputError(str(exc)) from None


def cmd_analyze(args: argparse.Namespace) -> int:
    c = _connection_from_args(args)
    check = validate(c, strict=not args.allow_disconnected)
    if not check:
        raise InputError(f"{c.describe()}: " + "; ".join(check.reasons))
    group = ExtraspecialGroup(c.n, IsoType(args.iso_type))
    if args.verify:
        _check_verify_size(group)
    report, bad = analyze_connection(c, group, args.verify, args.tol, args.extra_time or ())
    _emit(report, args.json, render_text(report))
    if bad:
        print("closed-form/oracle disagreement: " + json.dumps(bad, default=str), file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    if args.n not in (1, 2):
        raise InputError(f"search supports n in {{1, 2}}, got {args.n}")
    summary = search(args.n, args.verify_sample, args.seed, args.jobs, args.tol)
    payload = summary.to_dict()
    lines = [f"n={summary.n}: {summary.total_valid} valid connection sets"]
    for label, count in summary.counts.items():
        ex = summary.exemplars.get(label)
        lines.append(f"  {label:28s} {count:6d}" + (f"  e.g. {ex['classes']} z={ex['include_z']}" if ex else ""))
    ver = summary.verification
    if ver.get("sample_size"):
        lines.append(f"oracle sample: {ver['sample_size']} sets (seed {ver['seed']}), {len(ver['disagreements'])} disagreements")
    _emit(payload, args.json, "\n".join(lines))
    return EXIT_DISAGREE if ver.get("disagreements") else EXIT_OK


def cmd_spread(args: argparse.Namespace) -> int:
    if args.spread_file:
        try:
            spread = read_spread_file(args.spread_file)
        except (OSError, ValueError) as exc:
            raise InputError(str(exc)) from None
        if spread.length != 2 * args.n:
            raise InputError(f"{args.spread_file}: vectors have length {spread.length}, expected {2 * args.n}")
    else:
        k = args.k if args.k is not None else args.n
        if k != args.n:
            raise InputError("without --spread-file only the regular spread (k = n) is available")
        try:
            spread = regular_spread(args.n)
        except ConfigurationError as exc:
            raise InputError(str(exc)) from None
    if args.members:
        try:
            idx = [int(i) for i in args.members.split(",")]
            spread = spread.select(idx)
        except (ValueError, IndexError):
            raise InputError(f"--members: bad index list {args.members!r}") from None
    elif args.take is not None:
        if not 1 <= args.take <= len(spread):
            raise InputError(f"--take must be between 1 and {len(spread)}")
        spread = spread.take(args.take)
    if not spread.members:
        raise InputError("empty spread selection")
    k = spread.members[0].dim
    if not validate_spread(spread, k):
        raise InputError("selection is not a partial spread")
    c = criteria.spread_connection(spread)
    check = validate(c)
    if not check:
        raise InputError("spread points do not span F_2^%d: %s" % (2 * args.n, "; ".join(check.reasons)))
    group = ExtraspecialGroup(args.n, IsoType(args.iso_type))
    if args.verify:
        _check_verify_size(group)
    prediction = criteria.spread_predict(len(spread), k, args.n)
    report, bad = analyze_connection(c, group, args.verify, args.tol, args.extra_time or ())
    pst = report["pst"]
    if prediction.pst and (not pst["admits"] or pst["min_time"]["pi_exponent"] != prediction.min_time.exponent):
        bad.append({"check": "spread_predict_vs_pst_decision", "prediction": prediction.to_dict(), "pst": pst})
    if prediction.fr_balanced and report["fr"]["case"] != criteria.PROPER_FR:
        bad.append({"check": "spread_predict_vs_fr_classify", "prediction": prediction.to_dict(), "fr": report["fr"]})
    payload = {
        "schema": 1,
        "spread": {"k": k, "N": len(spread), "members": format_spread(spread).split()},
        "prediction": prediction.to_dict(),
        "analysis": report,
    }
    text = (
        f"partial {k}-spread with N={len(spread)} members in F_2^{2 * args.n}\n"
        f"spread prediction: {prediction.label}"
        + (f" (PST at pi/2^{prediction.min_time.exponent})" if prediction.pst else "")
        + "\n"
        + render_text(report)
    )
    _emit(payload, args.json, text)
    if bad:
        print("closed-form/oracle disagreement: " + json.dumps(bad, default=str), file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    results = verify.run(args.level, args.seed)
    passed = all(r.passed for r in results)
    payload = {"schema": 1, "level": args.level, "passed": passed, "groups": [r.to_dict() for r in results]}
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name:26s} checked={r.checked:<6d} {r.seconds:6.2f}s")
        lines.extend(f"      {msg}" for msg in r.failures[:5])
    lines.append("all groups passed" if passed else "FAILURES: " + ", ".join(r.name for r in results if not r.passed))
    _emit(payload, args.json, "\n".join(lines))
    return EXIT_OK if passed else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="espwalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, oracle: bool = True) -> None:
        p.add_argument("--iso-type", choices=[t.value for t in IsoType], default="plus")
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        if oracle:
            p.add_argument("--verify", action="store_true", help="confirm verdicts with the numeric walk")
            p.add_argument("--extra-time", type=_dyadic, action="append", metavar="p/2^m",
                           help="also evaluate the walk at p*pi/2^m (repeatable)")

    p = sub.add_parser("analyze", help="analyze one connection set")
    p.add_argument("--n", type=int)
    p.add_argument("--classes", help="comma-separated class bit-strings, e.g. 10,01,11")
    p.add_argument("--include-z", action="store_true")
    p.add_argument("--file", help="connection-set JSON file")
    p.add_argument("--allow-disconnected", action="store_true", help="accept non-generating sets")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("search", help="classify every connection set for n = 1 or 2")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify-sample", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("spread", help="build a Cayley graph from a partial spread")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--take", type=int, help="use the first N spread members")
    p.add_argument("--members", help="comma-separated member indices")
    p.add_argument("--spread-file")
    common(p)
    p.set_defaults(func=cmd_spread)

    p = sub.add_parser("verify", help="run the self-verification suite")
    p.add_argument("level", choices=["quick", "full"], nargs="?", default="quick")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
