"""``telescope`` command-line front end.

Exit codes: 0 success, 1 when the algorithm answers "no", 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .arith.core import QQ, DomainError, FracField, PolyRing
from .ore import SingularPointError
from .expr import ParseError, UnsupportedExpression, format_value, free_symbols, parse, to_field

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ----------------------------------------------------------------- helpers

def _univariate(text, var):
    node = parse(text)
    extra = free_symbols(node) - {var}
    if extra:
        raise UsageError(f"unexpected symbol(s) {', '.join(sorted(extra))}; "
                         f"only {var} is allowed (use --var to change it)")
    return to_field(node, FracField(PolyRing(QQ, var)))


def _bivariate(text, x, y):
    from .ct import bivariate_field
    node = parse(text)
    extra = free_symbols(node) - {x, y}
    if extra:
        raise UsageError(f"unexpected symbol(s) {', '.join(sorted(extra))}; variables are {x}, {y}")
    return to_field(node, bivariate_field(x, y))


def _operator(text, gen, var):
    from .ore import parse_operator
    return parse_operator(text, gen, FracField(PolyRing(QQ, var)))


def _op_json(op):
    return {"generator": op.gen, "coeffs": [format_value(c) for c in op.coeffs]}


def _emit(args, text_lines, payload):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _values(text):
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        out.append(to_field(parse(part), QQ))
    return out


# --------------------------------------------------------------- commands

def cmd_integrate_rational(args):
    from .integrate import integrate_rational
    f = _univariate(args.expr, args.var)
    g, lp = integrate_rational(f)
    pairs = lp.as_strings()
    lines = [f"rational part: {format_value(g)}"]
    z = "t" if args.var == "z" else "z"
    lines += [f"log part: sum over {u} = 0 of {z}*log({h})" for u, h in pairs]
    _emit(args, lines, {"rational_part": format_value(g), "logpart": [list(p) for p in pairs]})
    return EXIT_OK


def cmd_logpart(args):
    from .integrate import logpart
    f = _univariate(args.expr, args.var)
    lp = logpart(f)
    pairs = lp.as_strings()
    _emit(args, [f"({u}, {h})" for u, h in pairs], {"logpart": [list(p) for p in pairs]})
    return EXIT_OK


def cmd_sum_polynomial(args):
    from .ratsum import sum_polynomial
    f = _univariate(args.expr, args.var)
    if not f.is_poly():
        raise UsageError("sum-polynomial expects a polynomial")
    g = sum_polynomial(f.num.scale(f.ring.dom.inv(f.den.lc())))
    _emit(args, [format_value(g)], {"antidifference": format_value(g)})
    return EXIT_OK


def cmd_sum_rational(args):
    from .ratsum import abramov_reduce
    f = _univariate(args.expr, args.var)
    g, r = abramov_reduce(f)
    ok = not r
    lines = [f"g = {format_value(g)}", f"r = {format_value(r)}"]
    if not ok:
        lines.append("not rationally summable")
    _emit(args, lines, {"g": format_value(g), "r": format_value(r), "summable": ok})
    return EXIT_OK if ok else EXIT_NO


def cmd_gosper(args):
    from .hyper import compile_term, gosper
    node = parse(args.expr)
    t = compile_term(node, "_n", args.var)
    y = gosper(t)
    if y is None:
        _emit(args, ["not Gosper-summable"], {"summable": False})
        return EXIT_NO
    ys = format_value(y)
    lines = [f"y = {ys}", f"antidifference = ({ys})*({args.expr})"]
    _emit(args, lines, {"summable": True, "certificate": ys})
    return EXIT_OK


def _telescoping_payload(res):
    return {
        "telescoper": _op_json(res.telescoper),
        "certificate": format_value(res.certificate),
        "order": res.telescoper.order,
        "verified": bool(res.verified),
        "warnings": list(getattr(res, "warnings", [])),
    }


def _telescoping_lines(res, verify):
    lines = [f"telescoper: {res.telescoper}",
             f"certificate: {format_value(res.certificate)}",
             f"order: {res.telescoper.order}"]
    if verify:
        lines.append(f"verified: {'yes' if res.verified else 'no'}")
    lines += [f"warning: {w}" for w in getattr(res, "warnings", [])]
    return lines


def cmd_zeilberger(args):
    from .hyper import compile_term, zeilberger
    t = compile_term(parse(args.expr), args.n, args.k)
    res = zeilberger(t, args.r_max, verify=args.verify)
    if res is None:
        msg = f"no telescoper of order <= {args.r_max}"
        _emit(args, [msg], {"telescoper": None, "order": None, "verified": False,
                            "certificate": None, "warnings": [msg]})
        return EXIT_NO
    _emit(args, _telescoping_lines(res, args.verify), _telescoping_payload(res))
    return EXIT_OK


def cmd_celine(args):
    from .celine import celine_sum_recurrences
    from .hyper import compile_term
    t = compile_term(parse(args.expr), args.n, args.k)
    recs = celine_sum_recurrences(t, args.r, args.s)
    if not recs:
        _emit(args, [f"no k-free recurrence at r={args.r}, s={args.s}"], {"recurrences": []})
        return EXIT_NO
    lines = []
    payload = []
    for op in recs:
        lines.append(f"recurrence: {op}")
        payload.append(_op_json(op))
    _emit(args, lines, {"recurrences": payload})
    return EXIT_OK


def cmd_ct_rational(args):
    from .ct import az_telescoper, hermite_telescoper
    f = _bivariate(args.expr, args.x, args.y)
    if args.method == "az":
        res = az_telescoper(f)
        if res is None:
            _emit(args, ["no telescoper found by the ansatz"], {"telescoper": None})
            return EXIT_NO
    else:
        res = hermite_telescoper(f)
    _emit(args, _telescoping_lines(res, True), _telescoping_payload(res))
    return EXIT_OK


def cmd_diagonal(args):
    from .ct import diagonal_annihilator
    f = _bivariate(args.expr, args.x, args.y)
    op = diagonal_annihilator(f)
    _emit(args, [f"annihilator: {op}"], {"annihilator": _op_json(op)})
    return EXIT_OK


def cmd_dfinite(args):
    from .ore import (AnnihilatedSeries, annihilator_product, annihilator_sum, lclm, ode_to_rec,
                      ore_mul, unroll)
    action = args.action
    if action in ("mul", "lclm", "sum", "product"):
        if len(args.ops) != 2:
            raise UsageError(f"dfinite {action} takes two operators")
        a = _operator(args.ops[0], args.gen, args.var)
        b = _operator(args.ops[1], args.gen, args.var)
        fn = {"mul": ore_mul, "lclm": lclm, "sum": annihilator_sum, "product": annihilator_product}[action]
        op = fn(a, b)
        _emit(args, [str(op)], {"operator": _op_json(op)})
        return EXIT_OK
    if len(args.ops) != 1:
        raise UsageError(f"dfinite {action} takes one operator")
    if action == "ode2rec":
        L = _operator(args.ops[0], "D", args.var)
        op, d = ode_to_rec(L)
        _emit(args, [str(op), f"valid for n >= {d}"], {"operator": _op_json(op), "valid_from": d})
        return EXIT_OK
    if action == "unroll":
        if not args.init:
            raise UsageError("unroll needs --init")
        op = _operator(args.ops[0], args.gen, args.var)
        vals = unroll(AnnihilatedSeries(op, tuple(_values(args.init))), args.count)
        _emit(args, [", ".join(str(v) for v in vals)], {"values": [str(v) for v in vals]})
        return EXIT_OK
    raise UsageError(f"unknown dfinite action {action}")


def cmd_verify(args):
    from .verify import (check_recurrence_on_values, check_telescoper_integral,
                         check_telescoper_sum)
    if args.values is not None:
        op = _operator(args.op, "S", args.n)
        rep = check_recurrence_on_values(op, _values(args.values), args.offset)
    elif args.integral:
        from .ct import bivariate_field
        if args.expr is None:
            raise UsageError("verify --integral needs an integrand")
        f = _bivariate(args.expr, args.x, args.y)
        op = _operator(args.op, "D", args.x)
        g = to_field(parse(args.cert), bivariate_field(args.x, args.y))
        rep = check_telescoper_integral(op, g, f, args.y)
    else:
        from .hyper import compile_term
        if args.expr is None:
            raise UsageError("verify needs a term (or --values)")
        t = compile_term(parse(args.expr), args.n, args.k)
        op = _operator(args.op, "S", args.n)
        R = to_field(parse(args.cert), t.field)
        rep = check_telescoper_sum(op, R, t)
    lines = ["ok" if rep.ok else f"not ok, residual: {format_value(rep.residual)}"]
    lines += [f"warning: {w}" for w in rep.warnings]
    _emit(args, lines, {"ok": rep.ok, "residual": format_value(rep.residual),
                        "warnings": list(rep.warnings)})
    return EXIT_OK if rep.ok else EXIT_NO


# ----------------------------------------------------------------- parser

def build_parser():
    p = _Parser(prog="telescope", description="Exact symbolic summation and integration.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, helptext):
        sp = sub.add_parser(name, help=helptext, description=helptext)
        sp.set_defaults(func=fn)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    for name, fn, h in [
        ("integrate-rational", cmd_integrate_rational, "rational part and log part of an integral"),
        ("logpart", cmd_logpart, "logarithmic part of a proper rational function, squarefree denominator"),
        ("sum-polynomial", cmd_sum_polynomial, "indefinite sum of a polynomial"),
        ("sum-rational", cmd_sum_rational, "Abramov reduction of a rational function"),
    ]:
        sp = add(name, fn, h)
        sp.add_argument("expr")
        sp.add_argument("--var", default="x")
    sp = add("gosper", cmd_gosper, "indefinite hypergeometric summation")
    sp.add_argument("expr")
    sp.add_argument("--var", default="k")
    sp = add("zeilberger", cmd_zeilberger, "telescoper and certificate for a definite sum")
    sp.add_argument("expr")
    sp.add_argument("--n", default="n")
    sp.add_argument("--k", default="k")
    sp.add_argument("--r-max", type=int, default=6)
    sp.add_argument("--verify", dest="verify", action="store_true", default=True)
    sp.add_argument("--no-verify", dest="verify", action="store_false")
    sp = add("celine", cmd_celine, "Sister Celine's method")
    sp.add_argument("expr")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--n", default="n")
    sp.add_argument("--k", default="k")
    for name, fn, h in [("ct-rational", cmd_ct_rational, "telescoper for integrating a bivariate rational function"),
                        ("diagonal", cmd_diagonal, "annihilator of the diagonal of a bivariate rational series")]:
        sp = add(name, fn, h)
        sp.add_argument("expr")
        sp.add_argument("--x", default="x")
        sp.add_argument("--y", default="y")
        if name == "ct-rational":
            sp.add_argument("--method", choices=["hermite", "az"], default="hermite")
    sp = add("dfinite", cmd_dfinite, "operator arithmetic and closure properties")
    sp.add_argument("action", choices=["mul", "lclm", "sum", "product", "ode2rec", "unroll"])
    sp.add_argument("ops", nargs="+", help="operators written c0 + c1*G + ... (G = S or D)")
    sp.add_argument("--gen", choices=["S", "D"], default="D")
    sp.add_argument("--var", default=None)
    sp.add_argument("--init", default=None, help="comma-separated initial values")
    sp.add_argument("--count", type=int, default=10)
    sp = add("verify", cmd_verify, "check a telescoper/certificate pair or a recurrence")
    sp.add_argument("expr", nargs="?")
    sp.add_argument("--op", required=True)
    sp.add_argument("--cert", default="0")
    sp.add_argument("--values", default=None)
    sp.add_argument("--offset", type=int, default=0)
    sp.add_argument("--integral", action="store_true")
    sp.add_argument("--n", default="n")
    sp.add_argument("--k", default="k")
    sp.add_argument("--x", default="x")
    sp.add_argument("--y", default="y")
    return p


def run(argv=None, out=None, err=None):
    """Run the CLI; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    old = sys.stdout
    sys.stdout = out
    try:
        try:
            args = build_parser().parse_args(argv)
            if getattr(args, "command", None) == "dfinite" and args.var is None:
                args.var = "n" if args.gen == "S" else "x"
            return args.func(args)
        except UsageError as exc:
            print(f"telescope: error: {exc}", file=err)
            return EXIT_USAGE
        except ParseError as exc:
            print(f"telescope: parse error: {exc}", file=err)
            return EXIT_USAGE
        except (UnsupportedExpression, DomainError, TypeError, ValueError, ZeroDivisionError,
                SingularPointError) as exc:
            print(f"telescope: error: {exc}", file=err)
            return EXIT_USAGE
        except SystemExit as exc:
            return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    finally:
        sys.stdout = old


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
