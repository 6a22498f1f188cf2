"""Command-line front end.

Subcommands:
  validate   check a parameter-array file, print the validity report
  solve      build an array from eigenvalue lists and a phi_1 seed
  realize    print (or write) the realization bundle of a valid array
  verify     run the full identity suite, one JSON line per check
  d4         apply a word in the dihedral generators to an array
  recognize  decide whether a bidiagonal matrix pair is a Leonard pair
  brackets   print the bracket coefficient table

Exit codes: 0 success, 1 malformed input, 2 mathematically inconsistent
input (invalid array, inconsistent eigenvalue data, rejected pair),
3 internal identity failure.

The environment variable LEONARD_FIELD_MODULUS, when set, reinterprets
every scalar in the input file in GF(p) regardless of the file's field
header ("a/b" strings become a * b^-1 mod p).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import jsonio
from .fields import PrimeField, QQ
from .parray import (D4Element, InconsistentSplitsError, ParameterInputError,
                     d4_apply, solve_splits, validate_pa)
from .realization import brackets, realize
from .recognizer import recognize
from .report import VerificationError
from .suite import CHECK_KEYS, run_suite

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_INCONSISTENT = 2
EXIT_IDENTITY = 3


def _env_field():
    modulus = os.environ.get("LEONARD_FIELD_MODULUS")
    if modulus is None:
        return None
    try:
        return PrimeField(int(modulus))
    except ValueError as exc:
        raise jsonio.MalformedInputError(
            f"LEONARD_FIELD_MODULUS: {exc}") from exc


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise jsonio.MalformedInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise jsonio.MalformedInputError(f"{path} is not JSON: {exc}") from exc


def _load_array(path: str):
    return jsonio.parray_from_json(_load_json(path), _env_field())


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _cmd_validate(args) -> int:
    arr = _load_array(args.file)
    report = validate_pa(arr)
    _emit(jsonio.dumps(report.to_json()), args.out)
    return EXIT_OK if report.valid else EXIT_INCONSISTENT


def _cmd_solve(args) -> int:
    field = _env_field() or QQ
    theta = [field.parse(tok) for tok in args.theta.split(",")]
    theta_star = [field.parse(tok) for tok in args.theta_star.split(",")]
    seed = field.parse(args.phi1)
    try:
        arr = solve_splits(field, theta, theta_star, seed)
    except (ParameterInputError, InconsistentSplitsError) as exc:
        _emit(jsonio.dumps({"error": str(exc)}), args.out)
        return EXIT_INCONSISTENT
    _emit(jsonio.dumps(jsonio.parray_to_json(arr)), args.out)
    return EXIT_OK


def _cmd_realize(args) -> int:
    arr = _load_array(args.file)
    report = validate_pa(arr)
    if not report.valid:
        _emit(jsonio.dumps(report.to_json()), args.out)
        return EXIT_INCONSISTENT
    real = realize(arr)
    _emit(jsonio.dumps(jsonio.realization_to_json(real)), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    arr = _load_array(args.file)
    checks = None
    if args.checks and args.checks != "all":
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    report = run_suite(arr, checks)
    lines = [json.dumps(entry, sort_keys=False)
             for entry in report.to_json(timing=args.timings)]
    _emit("\n".join(lines), args.out)
    if not report.entries[0].ok:
        return EXIT_INCONSISTENT
    return EXIT_OK if report.all_passed else EXIT_IDENTITY


def _cmd_d4(args) -> int:
    arr = _load_array(args.file)
    word = [tok.strip() for tok in args.word.split(",") if tok.strip()]
    try:
        g = D4Element.of(*word)
    except ValueError as exc:
        raise jsonio.MalformedInputError(str(exc)) from exc
    out = d4_apply(g, arr)
    _emit(jsonio.dumps(jsonio.parray_to_json(out)), args.out)
    return EXIT_OK


def _cmd_recognize(args) -> int:
    pair = jsonio.pair_from_json(_load_json(args.file), _env_field())
    verdict = recognize(pair)
    _emit(jsonio.dumps(verdict.to_json()), args.out)
    return EXIT_OK if verdict.accepted else EXIT_INCONSISTENT


def _cmd_brackets(args) -> int:
    arr = _load_array(args.file)
    report = validate_pa(arr)
    if not report.valid:
        _emit(jsonio.dumps(report.to_json()), args.out)
        return EXIT_INCONSISTENT
    _emit(jsonio.dumps(jsonio.brackets_to_json(brackets(arr))), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leonard",
        description="Exact construction and verification of Leonard systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_common(p):
        p.add_argument("--out", help="write output to a file instead of stdout")
        return p

    p = with_common(sub.add_parser("validate", help="check an array file"))
    p.add_argument("file")
    p.set_defaults(fn=_cmd_validate)

    p = with_common(sub.add_parser("solve", help="array from eigenvalues"))
    p.add_argument("--theta", required=True,
                   help="comma-separated eigenvalues of A")
    p.add_argument("--theta-star", dest="theta_star", required=True,
                   help="comma-separated eigenvalues of A*")
    p.add_argument("--phi1", required=True, help="nonzero phi_1 seed")
    p.set_defaults(fn=_cmd_solve)

    p = with_common(sub.add_parser("realize", help="realization bundle"))
    p.add_argument("file")
    p.set_defaults(fn=_cmd_realize)

    p = with_common(sub.add_parser("verify", help="run the identity suite"))
    p.add_argument("file")
    p.add_argument("--checks", default="all",
                   help=f"comma list from: {', '.join(CHECK_KEYS)}")
    p.add_argument("--timings", action="store_true",
                   help="include elapsed milliseconds per check")
    p.set_defaults(fn=_cmd_verify)

    p = with_common(sub.add_parser("d4", help="apply a dihedral word"))
    p.add_argument("file")
    p.add_argument("--word", required=True,
                   help="comma list over star, down, Down")
    p.set_defaults(fn=_cmd_d4)

    p = with_common(sub.add_parser("recognize", help="judge a matrix pair"))
    p.add_argument("file")
    p.set_defaults(fn=_cmd_recognize)

    p = with_common(sub.add_parser("brackets", help="bracket coefficients"))
    p.add_argument("file")
    p.set_defaults(fn=_cmd_brackets)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except jsonio.MalformedInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (ParameterInputError, InconsistentSplitsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except VerificationError as exc:
        print(f"internal identity failure: {exc}", file=sys.stderr)
        return EXIT_IDENTITY


if __name__ == "__main__":
    sys.exit(main())
