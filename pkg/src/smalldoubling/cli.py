"""Command-line front end.  Every subcommand prints JSON on stdout.

Exit codes: 0 success, 1 counterexample found, 2 usage or input error,
3 undecided (Magnus degree cap or ball cap reached).
"""
from __future__ import annotations

import argparse
import time
import json
import sys

from .errors import (
    BallCapExceeded,
    FamilyMismatchError,
    HypothesisError,
    PreconditionError,
    UndecidedOrderError,
    UnsupportedVersion,
)
from .report import (
    build_certificate,
    dumps,
    load_corpus,
    shipped_theorem_corpus,
    validate_certificate,
)
from .search.enumerate import EnumerationTask, enumerate_small_doubling
from .search.verify import THEOREMS

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _json_arg(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON for {what}: {exc}") from None


def _read_input(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return _json_arg(text, path)


def _group_and_set(args):
    """Group and set from ``--input`` or from ``--group`` / ``--set``."""
    if args.input is not None:
        obj = _read_input(args.input)
        if not isinstance(obj, dict) or "group" not in obj or "set" not in obj:
            raise UsageError("input must be an object with 'group' and 'set'")
        return obj["group"], obj["set"]
    if args.group is None or args.set is None:
        raise UsageError("give --input, or both --group and --set")
    return _json_arg(args.group, "--group"), _json_arg(args.set, "--set")


def _emit(cert, runtime_ms, timing):
    if timing:
        print(dumps({"certificate": cert, "runtime_ms": runtime_ms}))
    else:
        print(dumps(cert))


def _status(cert):
    return EXIT_COUNTEREXAMPLE if cert["counterexamples"] else EXIT_OK


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, int(round(1000 * (time.perf_counter() - t0)))


def cmd_set_command(name, extra=None):
    def run(args):
        group, raw = _group_and_set(args)
        inp = {"set": raw}
        if extra:
            inp.update(extra(args))
        cert, ms = _timed(lambda: build_certificate(name, group, inp))
        _emit(cert, ms, args.timing)
        return _status(cert)

    return run


def _classify_extra(args):
    if args.mode == "ck" and args.c is None:
        raise UsageError("--mode ck needs --c N")
    return {"mode": args.mode, "c": args.c if args.mode == "ck" else None}


def cmd_construct(args):
    cert, ms = _timed(lambda: build_certificate("construct", None, {"k": args.k}))
    _emit(cert, ms, args.timing)
    return _status(cert)


def cmd_enumerate(args):
    obj = load_corpus(_read_input(args.corpus))
    task = EnumerationTask.from_json(obj.get("task", obj))
    for S, s in enumerate_small_doubling(task, args.parallel, with_sizes=True):
        print(dumps({"set": S.to_json(), "square_size": s}))
    return EXIT_OK


def cmd_verify(args):
    if args.corpus is None:
        obj = shipped_theorem_corpus(args.theorem)
    else:
        obj = load_corpus(_read_input(args.corpus))
    if obj.get("theorem", args.theorem) != args.theorem:
        raise UsageError(f"corpus is for {obj['theorem']}, not {args.theorem}")
    inp = {"theorem": args.theorem, "params": obj["params"]}
    # the worker count never changes the result, so it stays out of the input
    cert, ms = build_certificate("verify", None, inp, workers=args.parallel)
    _emit(cert, ms, args.timing)
    return _status(cert)


def cmd_laws(args):
    group = _json_arg(args.group, "--group")
    gens = _json_arg(args.generators, "--generators")
    inp = {
        "generators": gens,
        "law": args.law,
        "radius": args.radius,
        "samples": args.samples,
        "seed": args.seed,
    }
    cert, ms = _timed(lambda: build_certificate("laws", group, inp))
    _emit(cert, ms, args.timing)
    return EXIT_OK


def cmd_check(args):
    obj = _read_input(args.certificate)
    cert = obj.get("certificate", obj)
    ok = validate_certificate(cert)
    print(dumps({"valid": ok}))
    return EXIT_OK if ok else EXIT_COUNTEREXAMPLE


def _add_set_args(p):
    p.add_argument("--group", help="group spec as JSON, e.g. '{\"family\":\"heisenberg\"}'")
    p.add_argument("--set", help="set elements as a JSON array")
    p.add_argument("--input", help="JSON file with 'group' and 'set' ('-' for stdin)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="smalldoubling", description="Small doubling in ordered groups."
    )
    parser.add_argument("--timing", action="store_true", help="wrap output with runtime_ms")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("square", help="square set and doubling statistics")
    _add_set_args(p)
    p.set_defaults(func=cmd_set_command("square"))

    p = sub.add_parser("classify", help="abelian classification verdict")
    _add_set_args(p)
    p.add_argument("--mode", choices=("3k3", "3k2", "ck"), default="3k3")
    p.add_argument("--c", type=int)
    p.set_defaults(func=cmd_set_command("classify", _classify_extra))

    p = sub.add_parser("dim", help="rank, Freiman dimension and square size")
    _add_set_args(p)
    p.set_defaults(func=cmd_set_command("dim"))

    p = sub.add_parser("match", help="young normal-form matching")
    _add_set_args(p)
    p.set_defaults(func=cmd_set_command("match"))

    p = sub.add_parser("construct", help="the 4k-5 set in Z x F2")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("enumerate", help="stream small-doubling subsets (JSON lines)")
    p.add_argument("--corpus", required=True, help="task JSON file ('-' for stdin)")
    p.add_argument("--parallel", type=int, default=None, help="worker processes")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run a theorem's verification pipeline")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--corpus", help="corpus JSON file (default: the shipped one)")
    p.add_argument("--parallel", type=int, default=None, help="worker processes")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("laws", help="metabelian / class-2 / abelian law check")
    p.add_argument("--group", required=True)
    p.add_argument("--generators", required=True, help="JSON array of elements")
    p.add_argument("--law", choices=("Metabelian", "Class2", "Abelian"), default="Metabelian")
    p.add_argument("--radius", type=int, default=6)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("check", help="re-validate a certificate offline")
    p.add_argument("certificate", help="certificate JSON file ('-' for stdin)")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UndecidedOrderError, BallCapExceeded) as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (
        UsageError,
        HypothesisError,
        PreconditionError,
        FamilyMismatchError,
        UnsupportedVersion,
        KeyError,
        ValueError,
        TypeError,
    ) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
