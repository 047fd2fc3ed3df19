"""``noetherforms`` command line: verify, models, decompose-chi, parse."""

from __future__ import annotations

import argparse
import json
import re
import sys
import warnings
from fractions import Fraction

from ..errors import NoetherFormsError
from ..lagrangian import FieldDecl, NonviableLagrangianWarning, dump, parse_lagrangian, typecheck
from ..models import (
    PAIRS,
    ConstitutiveTensor,
    chi_decompose,
    get_model,
    list_models,
    projector_ranks,
)
from .config import SuiteConfig
from .report import emit_report
from .suite import run_suite


def read_matrix(path) -> list:
    """A 6x6 rational matrix: JSON list of lists, or whitespace/comma separated rows."""
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = [re.split(r"[\s,]+", line.strip()) for line in text.splitlines()
                if line.strip() and not line.lstrip().startswith("#")]
    try:
        return [[Fraction(str(x)) for x in row] for row in data]
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise NoetherFormsError(f"{path}: bad matrix entry ({exc})") from exc


def _fmt(x: Fraction) -> str:
    return str(x)


def _print_matrix(m, out):
    cells = [[_fmt(x) for x in row] for row in m]
    w = max(len(c) for row in cells for c in row)
    out.write("      " + " ".join(f"{''.join(map(str, p)):>{w}}" for p in PAIRS) + "\n")
    for p, row in zip(PAIRS, cells):
        out.write(f"  {''.join(map(str, p))}  " + " ".join(f"{c:>{w}}" for c in row) + "\n")


def _rank(m) -> int:
    import flint

    return flint.fmpq_mat(6, 6, [flint.fmpq(x.numerator, x.denominator) for row in m for x in row]).rank()


def cmd_verify(args) -> int:
    cfg = SuiteConfig.load(args.config) if args.config else SuiteConfig(model=args.model or "maxwell")
    modes = None
    if args.mode:
        modes = tuple(m for spec in args.mode for m in spec.split(",") if m)
    chi = read_matrix(args.chi) if args.chi else None
    cfg = cfg.replace(model=args.model, n=args.n, p=args.p, seed=args.seed, cases=args.cases,
                      modes=modes, format=args.format, workers=args.workers,
                      degree=args.degree, coeff=args.coeff, chi=chi,
                      timing=True if args.timing else None)
    report = run_suite(cfg)
    text = emit_report(report, cfg.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    for r in report.failures():
        print(f"FAIL {r.mode} case {r.case}: {r.check} ({r.residual_monomials} monomials)",
              file=sys.stderr)
    return report.exit_code


def cmd_models(args) -> int:
    for name in list_models():
        m = get_model(name)
        print(f"{name:14s} n={m.n}  {m.description}")
        print(f"{'':14s} L = {m.source}")
    return 0


def cmd_decompose(args) -> int:
    chi = ConstitutiveTensor.from_matrix(read_matrix(args.file))
    names = ("principal", "skewon", "axion")
    for name, piece in zip(names, chi_decompose(chi)):
        m = piece.to_matrix()
        print(f"{name} piece (rank {_rank(m)}):")
        _print_matrix(m, sys.stdout)
    print("projector ranks on the 36-dimensional space: " + ", ".join(map(str, projector_ranks())))
    return 0


def _decls(args):
    if args.model:
        m = get_model(args.model)
        return list(m.decls), m.n
    decls = []
    for spec in args.field or ():
        name, _, deg = spec.partition(":")
        decls.append(FieldDecl.matter(name, int(deg or 1)))
    decls.append(FieldDecl.coframe(args.coframe))
    return decls, args.n


def cmd_parse(args) -> int:
    with open(args.file) as fh:
        text = fh.read()
    decls, n = _decls(args)
    expr = parse_lagrangian(text, decls)
    print(dump(expr))
    if n is not None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonviableLagrangianWarning)
            info = typecheck(expr, decls, n)
        verdict = "VIABLE" if info.viable else "NONVIABLE"
        print(f"degree {info.degree}, {info.parity}, {verdict}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="noetherforms", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run an identity suite")
    v.add_argument("--config", help="JSON suite configuration")
    v.add_argument("--model")
    v.add_argument("--n", type=int)
    v.add_argument("--p", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--cases", type=int)
    v.add_argument("--mode", action="append", help="pure, fixed-background, dynamical (repeatable)")
    v.add_argument("--format", choices=("json", "text"))
    v.add_argument("--out")
    v.add_argument("--workers", type=int)
    v.add_argument("--degree", type=int, help="polynomial degree bound")
    v.add_argument("--coeff", type=int, help="coefficient bound")
    v.add_argument("--chi", help="6x6 constitutive matrix file (premetric-ed)")
    v.add_argument("--timing", action="store_true", help="record elapsed times")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("models", help="list built-in models")
    m.set_defaults(func=cmd_models)

    d = sub.add_parser("decompose-chi", help="split a 6x6 constitutive matrix into its pieces")
    d.add_argument("file")
    d.set_defaults(func=cmd_decompose)

    p = sub.add_parser("parse", help="parse and typecheck a Lagrangian file")
    p.add_argument("file")
    p.add_argument("--model", help="take field declarations from a built-in model")
    p.add_argument("--field", action="append", help="matter field NAME:DEGREE (repeatable)")
    p.add_argument("--coframe", default="theta")
    p.add_argument("--n", type=int, help="dimension (enables typechecking)")
    p.set_defaults(func=cmd_parse)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NoetherFormsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
