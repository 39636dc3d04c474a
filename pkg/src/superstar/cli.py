"""Command line interface: ``superstar <command> --sig n,a,b ...``.

Exit codes: 0 success, 1 usage or parse error, 2 mathematical precondition
violated, 3 invariant suite failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import checks, formal, poisson, quantization, symplectic, weyl_clifford
from .expression import ExpressionError, format_expression, parse_expression
from .graded import ParityError, Signature, SignatureMismatch, SuperPolynomial, Variable

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_CHECK = 0, 1, 2, 3


class UsageError(Exception):
    pass


class PreconditionError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_signature(text: str, eps: Optional[str] = None) -> Signature:
    try:
        n, a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--sig expects n,a,b, got {text!r}") from None
    epsilons = None
    if eps:
        table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
        try:
            epsilons = tuple(table[e.strip()] for e in eps.split(","))
        except KeyError:
            raise UsageError(f"--eps expects a list of + and -, got {eps!r}") from None
    try:
        return Signature(n, a, b, epsilons)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_word(text: str, sig: Signature) -> List[Variable]:
    """A word of generators separated by ``*`` or whitespace, e.g. ``q1*p1``."""
    letters = []
    for tok in text.replace("*", " ").split():
        if tok == "1":
            continue
        if len(tok) < 2 or tok[0] not in "pqt" or not tok[1:].isdigit():
            raise UsageError(f"{tok!r} is not a generator (p<i>, q<i>, t<i>)")
        v = Variable(tok[0], int(tok[1:]))
        try:
            v.check(sig)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        letters.append(v)
    return letters


def load_matrix(path: str, sig: Signature) -> symplectic.SuperMatrix:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read matrix file {path}: {exc}") from None

    def entry(x):
        if isinstance(x, str):
            return parse_expression(x, sig)
        if isinstance(x, int):
            return x
        if isinstance(x, float):
            return Fraction(x).limit_denominator()
        raise UsageError(f"bad matrix entry {x!r}")

    blocks = {}
    for name in "ABCD":
        if name in data:
            blocks[name] = [[entry(x) for x in row] for row in data[name]]
    try:
        return symplectic.SuperMatrix.from_blocks(sig, **blocks)
    except ParityError as exc:
        raise PreconditionError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _payload(ok: bool, result: str, sig: Signature, hbar_order: int) -> dict:
    return {
        "ok": ok,
        "result": result,
        "signature": {"n": sig.n, "a": sig.a, "b": sig.b, "eps": list(sig.epsilons)},
        "hbar_order": hbar_order,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="superstar", description="Exact computations in the local super-Fedosov quantization.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--sig", required=True, help="signature n,a,b for type (2n|a,b)")
        p.add_argument("--eps", help="sign vector, e.g. +,-,+ (overrides the default order)")
        p.add_argument("--json", action="store_true", help="emit a JSON result object")
        return p

    for name in ("star", "bracket", "commutator"):
        p = common(sub.add_parser(name))
        p.add_argument("f")
        p.add_argument("g")
    p = common(sub.add_parser("normal-order", help="normal form of a word such as q1*p1"))
    p.add_argument("word")
    p = common(sub.add_parser("member", help="Sp(2n|a,b) membership of a JSON matrix"))
    p.add_argument("matrix")
    p.add_argument("--lie", action="store_true", help="test Lie superalgebra membership instead")
    p = common(sub.add_parser("act", help="apply a member of Sp(2n|a,b) to an expression"))
    p.add_argument("matrix")
    p.add_argument("f")
    p = common(sub.add_parser("jet", help="Taylor jet of an expression"))
    p.add_argument("f")
    p.add_argument("--order", type=int, default=None)
    p = common(sub.add_parser("check", help="run the randomized invariant suite"))
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--cases", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _run(args, out) -> int:
    sig = parse_signature(args.sig, args.eps)
    expr = lambda text: parse_expression(text, sig)

    if args.command == "check":
        results = checks.run_checks(sig, degree=args.degree, cases=args.cases, seed=args.seed)
        passed = sum(r.passed for r in results)
        ok = passed == len(results)
        summary = f"{passed}/{len(results)} checks passed"
        if args.json:
            out.write(json.dumps(_payload(ok, summary, sig, 0)) + "\n")
        else:
            for r in results:
                out.write(r.line() + "\n")
            out.write(summary + "\n")
        return EXIT_OK if ok else EXIT_CHECK

    if args.command == "member":
        M = load_matrix(args.matrix, sig)
        test = symplectic.is_sp_lie_member if args.lie else symplectic.is_sp_member
        verdict = test(poisson.PoissonContext(sig), M)
        text = "true" if verdict else "false"
        out.write((json.dumps(_payload(True, text, sig, 0)) if args.json else text) + "\n")
        return EXIT_OK

    if args.command == "star":
        result = quantization.star(sig, expr(args.f), expr(args.g))
    elif args.command == "bracket":
        result = poisson.poisson_bracket(sig, expr(args.f), expr(args.g))
    elif args.command == "commutator":
        result = quantization.star_commutator(sig, expr(args.f), expr(args.g))
    elif args.command == "normal-order":
        result = weyl_clifford.normal_order(sig, parse_word(args.word, sig))
    elif args.command == "act":
        M = load_matrix(args.matrix, sig)
        try:
            result = symplectic.act(sig, M, expr(args.f))
        except symplectic.NotAMember as exc:
            raise PreconditionError(str(exc)) from None
    elif args.command == "jet":
        f = expr(args.f)
        order = args.order if args.order is not None else f.degree()
        if order < 0:
            raise UsageError("--order must be nonnegative")
        j = formal.taylor_jet(f, order)
        text = str(j)
        if args.json:
            out.write(json.dumps(_payload(True, text, sig, j.poly.hbar_order())) + "\n")
        else:
            out.write(text + "\n")
        return EXIT_OK
    else:  # pragma: no cover - argparse rejects unknown commands
        raise UsageError(f"unknown command {args.command}")

    text = format_expression(result)
    if args.json:
        out.write(json.dumps(_payload(True, text, sig, result.hbar_order())) + "\n")
    else:
        out.write(text + "\n")
    return EXIT_OK


def main(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _run(args, out)
    except (UsageError, ExpressionError, SignatureMismatch) as exc:
        err.write(f"superstar: error: {exc}\n")
        return EXIT_USAGE
    except (PreconditionError, ParityError, ZeroDivisionError, ArithmeticError) as exc:
        err.write(f"superstar: precondition violated: {exc}\n")
        return EXIT_MATH


def entry_point() -> None:  # pragma: no cover
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entry_point()
