"""Command line entry point ``wittforge``."""

from __future__ import annotations

import argparse
import json
import sys

from .armature import AlgebraPresentation, ArmatureOracle, division_certificate
from .funcfield import FieldConfig
from .quadform import clifford_class, parse_form, value_coset_set
from .scenarios import SCENARIOS, TAMPERS
from .symbolalg import AssumeDivision, OracleError, chain_list, normalize, parse_symbols
from .wittbound import HypothesisError, bound_for_sum

DEFAULT_FIELD = "p=2 vars=d,c,b,a"


def _field(args):
    return FieldConfig.parse(args.field)


def cmd_scenario(args):
    kwargs = {"keep_going": args.keep_going}
    if args.tamper:
        if args.name != "dim7":
            raise SystemExit("--tamper applies to dim7 only")
        kwargs["tamper"] = args.tamper
    report = SCENARIOS[args.name](**kwargs)
    print(report.to_json() if args.json else report.summary())
    return 0 if report.passed else 1


def cmd_chain(args):
    cfg = _field(args)
    syms = parse_symbols(args.symbols, cfg)
    oracle = AssumeDivision() if args.assume_division else ArmatureOracle()
    try:
        res = chain_list(syms, oracle)
    except OracleError as exc:
        print(f"error: {exc} (use --assume-division to assert it)", file=sys.stderr)
        return 2
    print("input:   " + " + ".join(str(s) for s in syms))
    print("chain:   " + str(res))
    print("elements: " + ", ".join(str(e) for e in res.elements))
    print(f"verified: {res.verify()}")
    return 0


def cmd_clifford(args):
    cfg = _field(args)
    q = parse_form(args.form, cfg)
    raw = clifford_class(q, normalized=False)
    norm = normalize(raw)
    print(f"form:       {q}")
    print(f"clifford:   {raw if not raw.is_empty() else '0'}")
    print(f"normalized: {norm if not norm.is_empty() else '0'}")
    return 0


def cmd_witt_bound(args):
    cfg = _field(args)
    q, r = parse_form(args.left, cfg), parse_form(args.right, cfg)
    try:
        res = bound_for_sum(q, r)
    except HypothesisError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        print(f"cosets of {q}: {value_coset_set(q)}", file=sys.stderr)
        return 2
    print(f"cosets of {q}: {res.left}")
    print(f"cosets of {r}: {res.right}")
    print("intersection: {" + ", ".join(str(c) for c in res.common) + "}")
    note = " (conditional on the presentation of the second form)" if res.conditional else ""
    print(f"witt index bound: {res.bound}{note}")
    return 0


def cmd_division_cert(args):
    cfg = _field(args)
    alg = AlgebraPresentation.parse(args.tensor, cfg)
    cert = division_certificate(alg)
    if args.json:
        print(json.dumps(cert.to_dict(), indent=2, ensure_ascii=False))
        return 0
    print(f"algebra: {alg}")
    for name, v in cert.elements:
        print(f"  v({name}) = {v}")
    print(f"group:   {cert.group}")
    print(f"index:   {cert.index} (degree^2 = {cert.degree ** 2})")
    print(f"verdict: {cert.verdict}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="wittforge", description="Certified computations with symbols and quadratic forms in characteristic p.")
    parser.add_argument("--field", default=DEFAULT_FIELD, help=f'field, e.g. "{DEFAULT_FIELD}" (innermost variable first)')
    # --field may also follow the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scenario", parents=[common], help="run a scripted verification")
    p.add_argument("name", choices=sorted(SCENARIOS))
    p.add_argument("--json", action="store_true")
    p.add_argument("--keep-going", action="store_true", help="run all checks after a failure")
    p.add_argument("--tamper", choices=sorted(TAMPERS), help="plant a failure (harness self-test)")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("chain", parents=[common], help="rewrite symbols into a chained presentation")
    p.add_argument("symbols", help='e.g. "[a,b) + [c,d)"')
    p.add_argument("--assume-division", action="store_true", help="treat every symbol not certified split as division")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("clifford", parents=[common], help="Clifford class of a form")
    p.add_argument("form", help='e.g. "c*[1,a+b] + b*[1,a] + <1>"')
    p.set_defaults(func=cmd_clifford)

    p = sub.add_parser("witt-bound", parents=[common], help="Witt index bound for an orthogonal sum")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_witt_bound)

    p = sub.add_parser("division-cert", parents=[common], help="value-group division certificate")
    p.add_argument("tensor", help='e.g. "[a,b) ⊗ [b,c)"')
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_division_cert)
    return parser


def _join_field_tokens(argv):
    # accept --field p=2 vars=d,c,b,a without quotes
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok == "--field":
            parts = []
            i += 1
            while i < len(argv) and "=" in argv[i] and not argv[i].startswith("-") and argv[i].split("=")[0] in ("p", "vars"):
                parts.append(argv[i])
                i += 1
            out += ["--field", " ".join(parts)]
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_field_tokens(argv))
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
