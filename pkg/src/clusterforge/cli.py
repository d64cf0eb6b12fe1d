"""Command-line interface.

Subcommands: mutate, fpoly, cmatrix, family, stabilize, limit, verify.
Quivers come either from a JSON file {"b": [[...]], "d": [...]} or from a
family spec.  Output is canonical text or JSON; identical inputs produce
byte-identical output.  Exit codes: 0 success, 1 usage error, 2 computation
error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .closedform import fpoly_formula, fpoly_product_form
from .cmatrix import c_between, trace
from .errors import ClusterForgeError, ParseError
from .families import (FamilySpec, build_family, fpoly_gale_robinson,
                       fpoly_kr, fpoly_symmetric)
from .laurent import LaurentPolynomial, parse_monomial
from .quiver import GeneralizedQuiver, framed_state, make_quiver, mutate
from .stabilization import (limit_a1r, limit_gale_robinson, limit_kr,
                            stabilization_run)
from .verify import run_verification


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_sequence(text: str) -> tuple[int, ...]:
    """Comma list, 'a..b' range, or 'a..bxN' repeated range."""
    text = text.strip()
    if not text:
        return ()
    match = re.fullmatch(r"(\d+)\.\.(\d+)(?:x(\d+))?", text)
    if match:
        lo, hi = int(match.group(1)), int(match.group(2))
        reps = int(match.group(3) or 1)
        if hi < lo or reps < 1:
            raise ParseError(f"bad sequence range {text!r}")
        return tuple(range(lo, hi + 1)) * reps
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ParseError(f"bad sequence {text!r}") from exc


def parse_params(text: str) -> dict[str, int]:
    params = {}
    if not text:
        return params
    for item in text.split(","):
        key, _, value = item.partition("=")
        if not _:
            raise ParseError(f"bad parameter {item!r}, expected key=value")
        try:
            params[key.strip()] = int(value)
        except ValueError as exc:
            raise ParseError(f"bad parameter value {item!r}") from exc
    return params


def load_quiver(args) -> GeneralizedQuiver:
    if getattr(args, "quiver", None) and getattr(args, "family", None):
        raise UsageError("provide exactly one of --quiver and --family")
    if getattr(args, "quiver", None):
        try:
            with open(args.quiver, encoding="utf-8") as handle:
                data = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read quiver file: {exc}") from exc
        if "b" not in data:
            raise ParseError('quiver file needs a "b" matrix')
        return make_quiver(data["b"], data.get("d"))
    if getattr(args, "family", None):
        spec = FamilySpec.of(args.family, **parse_params(args.params or ""))
        return build_family(spec)
    raise UsageError("provide --quiver FILE or --family NAME")


def _print_poly(poly: LaurentPolynomial, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({"terms": poly.to_json_terms()}))
    else:
        print(poly.to_text())


def _print_matrix(name: str, m, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({name: [list(row) for row in m]}))
    else:
        print(f"{name} =")
        for row in m:
            print("  [" + " ".join(f"{x:4d}" for x in row) + "]")


def _add_quiver_args(parser) -> None:
    parser.add_argument("--quiver", help="JSON quiver file")
    parser.add_argument("--family", help="family name: kr | gr | a1r")
    parser.add_argument("--params", help="family parameters, e.g. r=2 or v=7,r=2,t=3")
    parser.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> _Parser:
    parser = _Parser(prog="clusterforge")
    sub = parser.add_subparsers(dest="command", required=True)

    p_mutate = sub.add_parser("mutate", help="apply a mutation sequence")
    _add_quiver_args(p_mutate)
    p_mutate.add_argument("--seq", default="")

    p_fpoly = sub.add_parser("fpoly", help="compute an F-polynomial")
    _add_quiver_args(p_fpoly)
    p_fpoly.add_argument("--seq", default="")
    p_fpoly.add_argument("--method", choices=("recurrence", "formula", "product"),
                         default="recurrence")
    p_fpoly.add_argument("--coeff", help="print one monomial coefficient, e.g. y1^3*y2")

    p_cmx = sub.add_parser("cmatrix", help="C/D matrices, colors, r-monomials")
    _add_quiver_args(p_cmx)
    p_cmx.add_argument("--seq", default="")
    p_cmx.add_argument("--between", nargs=2, type=int, metavar=("M", "N"))

    p_family = sub.add_parser("family", help="emit a family quiver")
    _add_quiver_args(p_family)
    p_family.add_argument("--out", help="write the quiver JSON here instead of stdout")
    p_family.add_argument("--n", type=int, help="also print the specialized F_n")

    p_stab = sub.add_parser("stabilize", help="observe deformed-coefficient stabilization")
    _add_quiver_args(p_stab)
    p_stab.add_argument("--period", required=True)
    p_stab.add_argument("--count", type=int, default=6)
    p_stab.add_argument("--cutoff", type=int, default=6)

    p_limit = sub.add_parser("limit", help="closed-form stabilized limits")
    p_limit.add_argument("--family", required=True,
                         choices=("a1r", "kr", "gr", "dp1"))
    p_limit.add_argument("--params", default="")
    p_limit.add_argument("--cutoff", type=int, required=True)
    p_limit.add_argument("--format", choices=("text", "json"), default="text")

    p_verify = sub.add_parser("verify", help="run the full cross-check battery")
    _add_quiver_args(p_verify)
    p_verify.add_argument("--seq", default="")

    return parser


def _cmd_mutate(args) -> int:
    q = load_quiver(args)
    state = framed_state(q)
    for k in parse_sequence(args.seq):
        state = mutate(state, k)
    _print_matrix("B", state.quiver.b, args.format)
    _print_matrix("C", state.c, args.format)
    for i, label in enumerate(state.labels, start=1):
        if args.format == "json":
            print(json.dumps({"vertex": i, "terms": label.to_json_terms()}))
        else:
            print(f"V{i} = {label.to_text()}")
    return 0


def _cmd_fpoly(args) -> int:
    q = load_quiver(args)
    seq = parse_sequence(args.seq)
    n = len(seq)
    if args.method == "recurrence":
        from .quiver import fpoly_recurrence

        polys = fpoly_recurrence(q, seq)
        poly = polys[-1] if polys else LaurentPolynomial.one(q.v)
    else:
        tr = trace(q, seq)
        poly = fpoly_formula(tr, n) if args.method == "formula" else fpoly_product_form(tr, n)
    if args.coeff is not None:
        exps = parse_monomial(args.coeff, q.v)
        print(poly.coefficient(exps))
    else:
        _print_poly(poly, args.format)
    return 0


def _cmd_cmatrix(args) -> int:
    q = load_quiver(args)
    tr = trace(q, parse_sequence(args.seq))
    if args.between:
        m, n = args.between
        _print_matrix(f"C_{m},{n}", c_between(tr, m, n, "c"), args.format)
        _print_matrix(f"D_{m},{n}", c_between(tr, m, n, "d"), args.format)
        return 0
    _print_matrix("C", tr.c_mats[-1], args.format)
    _print_matrix("D", tr.d_mats[-1], args.format)
    for i in range(1, tr.n + 1):
        r_text = LaurentPolynomial.monomial(tr.r(i)).to_text()
        print(f"step {i}: vertex {tr.vertex(i)} {tr.color(i)} r = {r_text}")
    return 0


def _cmd_family(args) -> int:
    if not args.family:
        raise UsageError("family subcommand needs --family")
    spec = FamilySpec.of(args.family, **parse_params(args.params or ""))
    q = build_family(spec)
    payload = json.dumps({"b": [list(row) for row in q.b], "d": list(q.d)})
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(payload + "\n")
    else:
        print(payload)
    if args.n is not None:
        if args.family == "kr":
            poly = fpoly_kr(spec.param("r"), args.n)
        elif args.family == "gr":
            poly = fpoly_gale_robinson(spec.param("v"), spec.param("r"),
                                       spec.param("t"), args.n)
        else:
            poly = fpoly_symmetric(q, args.n)
        _print_poly(poly, args.format)
    return 0


def _cmd_stabilize(args) -> int:
    q = load_quiver(args)
    report = stabilization_run(q, parse_sequence(args.period), args.count, args.cutoff)
    if args.format == "json":
        print(json.dumps({
            "indices": list(report.indices),
            "monomials": [
                {
                    "exponents": list(m),
                    "history": [str(x) for x in report.histories[m]],
                    "stabilized_at": report.verdicts[m],
                }
                for m in report.histories
            ],
        }))
        return 0
    print("n = " + ", ".join(str(i) for i in report.indices))
    for m, hist in report.histories.items():
        name = LaurentPolynomial.monomial(m).to_text()
        verdict = report.verdicts[m]
        status = f"stabilized at n={verdict}" if verdict is not None else "still changing"
        print(f"{name}: {list(hist)} ({status})")
    return 0


def _cmd_limit(args) -> int:
    params = parse_params(args.params)
    needed = {"a1r": ("r",), "kr": ("r",), "gr": ("v", "r", "t"), "dp1": ()}
    missing = [key for key in needed[args.family] if key not in params]
    if missing:
        raise UsageError(f"limit --family {args.family} needs --params "
                         + ",".join(f"{k}=..." for k in missing))
    if args.family == "a1r":
        poly = limit_a1r(params["r"], args.cutoff)
    elif args.family == "kr":
        poly = limit_kr(params["r"], args.cutoff)
    elif args.family == "gr":
        poly = limit_gale_robinson(params["v"], params["r"], params["t"], args.cutoff)
    else:
        poly = limit_gale_robinson(4, 2, 1, args.cutoff)
    _print_poly(poly, args.format)
    return 0


def _cmd_verify(args) -> int:
    q = load_quiver(args)
    seq = parse_sequence(args.seq)
    results = run_verification(q, seq)
    width = max(len(name) for name in results)
    failed = False
    for name, ok in results.items():
        print(f"{name:<{width}}  {'pass' if ok else 'FAIL'}")
        failed = failed or not ok
    return 3 if failed else 0


_COMMANDS = {
    "mutate": _cmd_mutate,
    "fpoly": _cmd_fpoly,
    "cmatrix": _cmd_cmatrix,
    "family": _cmd_family,
    "stabilize": _cmd_stabilize,
    "limit": _cmd_limit,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except (UsageError, ParseError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ClusterForgeError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
