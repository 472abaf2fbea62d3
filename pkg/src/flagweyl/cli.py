"""``flagweyl`` command line.  Results go to stdout as JSON, diagnostics to stderr.

Exit codes: 0 success, 1 usage error, 2 unreadable input, 3 internal assertion.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .bijection import BijectionError, bucket_pairs, verify_bijection
from .character import coefficient, dual_character, first_multiple_bucket, is_zero_one_direct, xpoly_to_json
from .diagrams import Diagram, DiagramError, ParseError, diagram_to_json, parse_diagram
from .oracles import key_poly, schubert_poly
from .patterns import find_multiplicitous_witness
from .structure import normalize
from .sweep import sweep_theorem


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(message)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flagweyl", description="Dual characters of flagged Weyl modules.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_diagram(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("input", nargs="?", default="-", help="diagram file, '-' for stdin (default)")
        p.add_argument("--format", choices=("grid", "json"), default="grid")
        return p

    with_diagram("char", "dual character")
    p = with_diagram("coeff", "one coefficient of the dual character")
    p.add_argument("--exp", type=_ints, required=True)
    p = with_diagram("zero-one", "is the dual character zero-one")
    p.add_argument("--witness", action="store_true", help="also report the multiplicitous witness")
    p = with_diagram("multiplicitous", "search for a multiplicitous configuration")
    p.add_argument("--witness", action="store_true")
    with_diagram("normalize", "sort columns into normal order")
    p = with_diagram("verify-bijection", "check the filling bijection on every bucket")
    p.add_argument("--exp", type=_ints, help="restrict to one exponent bucket")
    p = sub.add_parser("schubert", help="Schubert polynomial")
    p.add_argument("--perm", type=_ints, required=True)
    p = sub.add_parser("key", help="key polynomial")
    p.add_argument("--comp", type=_ints, required=True)
    p = sub.add_parser("sweep", help="compare both zero-one tests on every diagram in [n]x[n]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sample", type=int, help="random diagrams instead of all of them")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    return parser


def _read_diagram(args: argparse.Namespace) -> Diagram:
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {args.input}: {exc.strerror}") from None
    return parse_diagram(text, args.format)


def _check_exp(D: Diagram, exp: Sequence[int]) -> tuple[int, ...]:
    if len(exp) != D.n:
        raise UsageError(f"--exp needs {D.n} entries, got {len(exp)}")
    return tuple(exp)


def run(argv: Sequence[str] | None = None) -> tuple[int, object]:
    """Execute one command; returns ``(exit code, json payload or None)``."""
    args = build_parser().parse_args(argv)
    cmd = args.command

    if cmd == "schubert":
        return 0, xpoly_to_json(schubert_poly(args.perm))
    if cmd == "key":
        return 0, xpoly_to_json(key_poly(args.comp))
    if cmd == "sweep":
        if args.n < 1 or args.workers < 1 or (args.sample is not None and args.sample < 0):
            raise UsageError("--n and --workers must be positive, --sample non-negative")
        if args.sample is None and args.n > 5:
            raise UsageError("exhaustive sweeps stop at n=5; use --sample")
        report = sweep_theorem(args.n, sample=args.sample, workers=args.workers, seed=args.seed, progress=True)
        print(f"sweep n={args.n}: {report.examined} diagrams, {len(report.disagreements)} disagreements, "
              f"{report.seconds:.1f}s", file=sys.stderr)
        return (0 if not report.disagreements else 3), report.to_json()

    D = _read_diagram(args)
    if cmd == "char":
        return 0, xpoly_to_json(dual_character(D))
    if cmd == "coeff":
        a = _check_exp(D, args.exp)
        return 0, {"exp": list(a), "coeff": str(coefficient(D, a))}
    if cmd in ("zero-one", "multiplicitous"):
        w = find_multiplicitous_witness(D)
        out: dict = {}
        if cmd == "zero-one":
            direct = is_zero_one_direct(D)
            out["zero_one"] = direct
            if direct == (w is not None):
                print("the rank test and the configuration search disagree", file=sys.stderr)
                return 3, {**out, "multiplicitous": w is not None}
            if not direct:
                a, k = first_multiple_bucket(D)
                out["first_multiple"] = {"exp": list(a), "coeff": str(k)}
        else:
            out["multiplicitous"] = w is not None
        if cmd == "zero-one" or args.witness:
            out["witness"] = w.to_json() if w else None
        return 0, out
    if cmd == "normalize":
        N, perm = normalize(D)
        return 0, {"diagram": diagram_to_json(N), "perm": list(perm)}
    if cmd == "verify-bijection":
        if find_multiplicitous_witness(D) is not None:
            raise UsageError("verify-bijection needs a multiplicity-free diagram")
        want = _check_exp(D, args.exp) if args.exp is not None else None
        results = []
        code = 0
        for C, C2 in bucket_pairs(D):
            if want is not None and C.exponent != want:
                continue
            report = verify_bijection(D, C, C2)
            if not report.ok:
                code = 3
            results.append({"source": [list(c) for c in C.columns], "target": [list(c) for c in C2.columns],
                            **report.to_json()})
        return code, results
    raise UsageError(f"unknown command {cmd}")  # pragma: no cover


def main(argv: Sequence[str] | None = None) -> int:
    try:
        code, payload = run(argv)
    except UsageError as exc:
        print(f"flagweyl: {exc}", file=sys.stderr)
        return 1
    except (ParseError, DiagramError, ValueError) as exc:
        print(f"flagweyl: {exc}", file=sys.stderr)
        return 2
    except (BijectionError, AssertionError, ArithmeticError) as exc:
        print(f"flagweyl: internal check failed: {exc}", file=sys.stderr)
        return 3
    json.dump(payload, sys.stdout)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
