"""Command-line entry point: ``ratdiag <command> ...``.

Every command builds one report dict (command echo, verdict, order checked,
payload, seed) and prints it either as JSON with sorted keys or as a short
table.  Exit status is 0 when every verdict passes, 1 on a failed check or a
computation error, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import __version__
from .errors import ParseError, RatDiagError
from .exact import Q, RatFn, TruncatedSeries, UniPoly, format_poly
from .families import FamilyParams, closed_form, evaluate_closed_form, p2_seven, p4_seven, p5_seven
from .hyp2f1 import CATALOG, catalog_ids, verify_identity
from .modular import (
    hauptmodul_pair,
    modular_poly,
    modular_tags,
    schwarzian_pairs,
    verify_modular_tag,
    verify_schwarzian_pair,
)
from .oracle import diagonal
from .report import CheckReport
from .symmetry import (
    MonomialMap,
    RescaleFn,
    apply_monomial,
    monomial_diagonal_law,
    rescaling_diagonal_law,
)
from .tripoly import RationalFn3, TriPoly, format_tripoly, parse_tripoly

DEFAULT_ORDER = 24


class UsageError(Exception):
    pass


# ------------------------------------------------------------ formatting


def series_payload(s: TruncatedSeries) -> dict[str, Any]:
    """Coefficients plus a polynomial expression that parses back."""
    cs = s.coefficients()
    return {
        "coefficients": [str(c) for c in cs],
        "order": s.order,
        "polynomial": format_poly(cs, "x") if s.pole_order == 0 else None,
    }


def poly_str(p: UniPoly) -> str:
    return format_poly(p.coeffs, "x")


def ratfn_str(f: RatFn) -> str:
    return f"({poly_str(f.num)})/({poly_str(f.den)})"


def check_json(r: CheckReport) -> dict[str, Any]:
    out = r.to_json()
    out.setdefault("first_mismatch_exponent", None)
    return out


def report(command: str, checks: list[dict], order: int | None, payload: dict, seed: int) -> dict:
    bad = [c for c in checks if not c.get("holds", False)]
    out: dict[str, Any] = {
        "command": command,
        "verdict": "fail" if bad else "pass",
        "order_checked": order,
        "payload": payload,
        "seed": seed,
    }
    if checks:
        out["checks"] = checks
    if bad:
        out["first_mismatch"] = [
            {"name": c.get("name", c.get("id")), "exponent": c.get("first_mismatch_exponent")}
            for c in bad
        ]
    return out


# ----------------------------------------------------------- parsing


def parse_params(text: str) -> list[Fraction]:
    try:
        return [Q(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad parameter list {text!r}: {exc}") from None


def parse_univariate(text: str, var: str = "t") -> UniPoly:
    """A polynomial in one variable (``t`` or ``x``), via the TriPoly parser."""
    p = parse_tripoly(text.replace(var, "x"))
    coeffs: dict[int, Fraction] = {}
    for (i, j, k), c in p.terms.items():
        if j or k:
            raise ParseError(f"{text!r} is not univariate in {var}")
        coeffs[i] = c
    top = max(coeffs, default=0)
    return UniPoly([coeffs.get(i, 0) for i in range(top + 1)])


def split_ratio(text: str) -> tuple[str, str]:
    """Split 'num/den' at the last top-level slash; a bare 'num' gives den '1'."""
    depth = 0
    cut = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            cut = i
    if cut is None:
        return text, "1"
    return text[:cut], text[cut + 1:]


def parse_rescale(text: str) -> RescaleFn:
    num, den = split_ratio(text)
    return RescaleFn(parse_univariate(num), parse_univariate(den))


def rational_fn(args) -> RationalFn3:
    num = parse_tripoly(args.numerator) if args.numerator else TriPoly.const(1)
    return RationalFn3(num, parse_tripoly(args.denominator))


# ------------------------------------------------------------ commands


def cmd_diag(args) -> dict:
    f = rational_fn(args)
    s = diagonal(f, args.order)
    payload = {"denominator": format_tripoly(f.denominator),
               "numerator": format_tripoly(f.numerator), "diagonal": series_payload(s)}
    return report("diag", [], args.order, payload, args.seed)


def cmd_closed_form(args) -> dict:
    p = FamilyParams.from_list(args.family, parse_params(args.params))
    cf = closed_form(p, args.family)
    payload: dict[str, Any] = {
        "family": args.family,
        "params": [str(v) for v in p.values()],
        "base": poly_str(cf.prefactor_base),
        "num": poly_str(cf.pullback_num),
        "den": poly_str(cf.pullback_den),
        "root": str(cf.root),
        "coefficients": {k: [str(c) for c in v.coeffs] for k, v in
                         (("base", cf.prefactor_base), ("num", cf.pullback_num), ("den", cf.pullback_den))},
    }
    if args.family == "7":
        payload.update(P2=poly_str(p2_seven(p)), P4=poly_str(p4_seven(p)), P5=poly_str(p5_seven(p)))
    checks = []
    if args.order > 0:
        s = evaluate_closed_form(cf, args.order)
        payload["series"] = series_payload(s)
        if args.check:
            mism = s.first_mismatch(diagonal(p.rational_function(), args.order))
            checks.append({"name": "closed form vs oracle", "holds": mism is None,
                           "order": args.order, "first_mismatch_exponent": mism})
    return report("closed-form", checks, args.order, payload, args.seed)


def cmd_verify_identity(args) -> dict:
    ids = catalog_ids() if args.all else args.id
    if not ids:
        raise UsageError("verify identity needs --all or --id")
    checks = []
    for tag in ids:
        r = verify_identity(tag, args.order).to_json()
        r.setdefault("first_mismatch_exponent", None)
        if CATALOG[tag].note:
            r["note"] = CATALOG[tag].note
        checks.append(r)
    return report("verify identity", checks, args.order, {"ids": list(ids)}, args.seed)


def cmd_verify_modular(args) -> dict:
    tags = modular_tags() if args.all else args.tag
    if not tags:
        raise UsageError("verify modular needs --all or --tag")
    checks = [check_json(r) for tag in tags for r in verify_modular_tag(tag, args.order)]
    return report("verify modular", checks, args.order, {"tags": list(tags)}, args.seed)


def cmd_verify_schwarzian(args) -> dict:
    pairs = schwarzian_pairs()
    names = list(pairs) if args.all else args.pair
    if not names:
        raise UsageError("verify schwarzian needs --all or --pair")
    checks, info = [], {}
    for name in names:
        if name not in pairs:
            raise UsageError(f"unknown pair {name!r}; choose from {', '.join(pairs)}")
        h, A, B = pairs[name]
        r = check_json(verify_schwarzian_pair(h, A, B, args.order))
        r["name"] = f"schwarzian balance: {name}"
        checks.append(r)
        info[name] = {"hyp": [str(h.alpha), str(h.beta), str(h.gamma)],
                      "A": ratfn_str(A), "B": ratfn_str(B)}
    return report("verify schwarzian", checks, args.order, {"pairs": info}, args.seed)


def cmd_transform_monomial(args) -> dict:
    m = MonomialMap.from_flat(parse_params(args.matrix))
    f = rational_fn(args)
    r = monomial_diagonal_law(f, m, args.order)
    g = apply_monomial(f, m)
    payload = {"map": m.describe(), "n": m.n,
               "transformed_numerator": format_tripoly(g.numerator),
               "transformed_denominator": format_tripoly(g.denominator),
               "lhs": r.details["lhs"], "rhs": r.details["rhs"]}
    c = check_json(r)
    c["details"] = {"n": m.n}
    return report("transform monomial", [c], args.order, payload, args.seed)


def cmd_transform_rescale(args) -> dict:
    F = parse_rescale(args.F)
    f = rational_fn(args)
    r = rescaling_diagonal_law(f, F, args.order)
    payload = {"F": F.describe(), "lhs": r.details["lhs"], "rhs": r.details["rhs"]}
    c = check_json(r)
    c.pop("details", None)
    return report("transform rescale", [c], args.order, payload, args.seed)


def cmd_catalog(args) -> dict:
    what = args.what
    if what == "hauptmoduls":
        payload = {str(N): [ratfn_str(f) for f in hauptmodul_pair(N)] for N in range(2, 8)}
    elif what == "modular-polys":
        payload = {}
        for tag in modular_tags():
            m = modular_poly(tag)
            payload[tag] = {"symmetric": m.is_symmetric(), "description": m.description,
                            "polynomial": format_tripoly(m.poly, ("A", "B", "z"))}
    elif what == "identities":
        payload = {tag: CATALOG[tag].note for tag in catalog_ids()}
    else:
        payload = {name: {"A": ratfn_str(A), "B": ratfn_str(B)}
                   for name, (h, A, B) in schwarzian_pairs().items()}
    return report(f"catalog {what}", [], None, payload, args.seed)


# ------------------------------------------------------------ argparse


def _common(order_default: int = DEFAULT_ORDER) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit JSON on stdout")
    p.add_argument("--order", "--terms", dest="order", type=int, default=order_default,
                   help=f"series order / number of terms (default {order_default})")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps (default 0)")
    p.add_argument("--timing", action="store_true",
                   help="add wall-clock milliseconds (breaks byte-identical output)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="ratdiag", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ratdiag {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def fn_args(p):
        p.add_argument("--denominator", required=True, help="polynomial in x, y, z")
        p.add_argument("--numerator", default=None, help="polynomial in x, y, z (default 1)")

    p = sub.add_parser("diag", parents=[common], help="brute-force diagonal")
    fn_args(p)
    p.set_defaults(func=cmd_diag)

    p = sub.add_parser("closed-form", parents=[common], help="closed form of a family member")
    p.add_argument("--family", required=True, choices=["7", "8", "9", "10", "9d3"])
    p.add_argument("--params", required=True, help="comma list of rationals p/q")
    p.add_argument("--check", action="store_true", help="compare with the oracle diagonal")
    p.set_defaults(func=cmd_closed_form)

    verify = sub.add_parser("verify", help="identity, modular and Schwarzian checks")
    vsub = verify.add_subparsers(dest="what", required=True)
    p = vsub.add_parser("identity", parents=[common])
    p.add_argument("--all", action="store_true")
    p.add_argument("--id", action="append", choices=catalog_ids(), metavar="ID")
    p.set_defaults(func=cmd_verify_identity)
    p = vsub.add_parser("modular", parents=[common])
    p.add_argument("--all", action="store_true")
    p.add_argument("--tag", action="append", choices=modular_tags())
    p.set_defaults(func=cmd_verify_modular)
    p = vsub.add_parser("schwarzian", parents=[common])
    p.add_argument("--all", action="store_true")
    p.add_argument("--pair", action="append", choices=list(schwarzian_pairs()))
    p.set_defaults(func=cmd_verify_schwarzian)

    transform = sub.add_parser("transform", help="monomial and rescaling laws")
    tsub = transform.add_subparsers(dest="what", required=True)
    p = tsub.add_parser("monomial", parents=[common])
    p.add_argument("--matrix", required=True, help="A1,A2,A3,B1,B2,B3,C1,C2,C3")
    fn_args(p)
    p.set_defaults(func=cmd_transform_monomial)
    p = tsub.add_parser("rescale", parents=[common])
    p.add_argument("--F", required=True, help="num/den in t, e.g. '1/(1+7*t)'")
    fn_args(p)
    p.set_defaults(func=cmd_transform_rescale)

    p = sub.add_parser("catalog", parents=[common], help="list built-in data")
    p.add_argument("what", choices=["hauptmoduls", "modular-polys", "identities", "schwarzian-pairs"])
    p.set_defaults(func=cmd_catalog)
    return parser


def render_table(rep: dict) -> str:
    lines = [f"{rep['command']}: {rep['verdict'].upper()}"
             + (f" (order {rep['order_checked']})" if rep["order_checked"] is not None else "")]
    for c in rep.get("checks", []):
        name = c.get("name", c.get("id"))
        mark = "ok  " if c.get("holds") else "FAIL"
        extra = "" if c.get("holds") else f"  first mismatch at x^{c.get('first_mismatch_exponent')}"
        lines.append(f"  {mark} {name}{extra}")
    for key, val in rep["payload"].items():
        if isinstance(val, dict) and "coefficients" in val:
            val = ", ".join(val["coefficients"])
        elif isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
        lines.append(f"  {key}: {val}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        rep = args.func(args)
    except UsageError as exc:
        print(f"ratdiag: error: {exc}", file=sys.stderr)
        return 2
    except (RatDiagError, ZeroDivisionError, ValueError) as exc:
        err = {"command": args.command, "verdict": "error",
               "error": {"type": type(exc).__name__, "message": str(exc)}}
        if args.json:
            print(json.dumps(err, sort_keys=True), file=out)
        else:
            print(f"ratdiag: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.timing:
        rep["timing_ms"] = round(1000 * (time.perf_counter() - start), 3)
    print(json.dumps(rep, sort_keys=True) if args.json else render_table(rep), file=out)
    return 0 if rep["verdict"] == "pass" else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
