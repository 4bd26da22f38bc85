"""Expression front end: parsing, exact evaluation, conversion into the field tower,
hypergeometric factor structure, and printing that round-trips through the parser.

Grammar (explicit ``*`` only)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("-" | "+") unary | power
    power   := postfix ("^" unary)?
    postfix := primary "!"*
    primary := INT | NAME | NAME "(" expr ("," expr)* ")" | "(" expr ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import factorial as ifactorial, floor

from .arith.core import QQ, FracField, Poly, PolyRing, RatFun, poly_lcm, qq

__all__ = [
    "Node", "ParseError", "UnsupportedExpression", "parse", "free_symbols",
    "make_tower", "to_field", "evaluate", "substitute", "LinForm", "HyperStructure",
    "structure", "rationalize", "format_value", "format_poly_expanded",
]

FUNCTIONS = {"factorial": 1, "binomial": 2, "pochhammer": 2}


class ParseError(ValueError):
    """Syntax error carrying the offending position."""

    def __init__(self, message, text, pos):
        self.text = text
        self.pos = pos
        caret = " " * pos + "^"
        super().__init__(f"{message} at position {pos}\n  {text}\n  {caret}")


class UnsupportedExpression(ValueError):
    """The expression is outside the class an operation handles."""


@dataclass(frozen=True)
class Node:
    op: str
    args: tuple = ()
    value: object = None
    pos: int = dc_field(default=0, compare=False)

    def __str__(self):
        return to_text(self)


# --------------------------------------------------------------------- parse

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        m = _TOKEN.match(text, i)
        if m is None or m.end() == i:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1):
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^!(),":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            toks.append((ch, ch, start))
        i = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            tok = self.take()
            rhs = self.term()
            node = Node("add" if tok[0] == "+" else "sub", (node, rhs), pos=tok[2])
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            tok = self.take()
            rhs = self.unary()
            node = Node("mul" if tok[0] == "*" else "div", (node, rhs), pos=tok[2])
        return node

    def unary(self):
        tok = self.peek()
        if tok[0] == "-":
            self.take()
            return Node("neg", (self.unary(),), pos=tok[2])
        if tok[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.postfix()
        if self.peek()[0] == "^":
            tok = self.take()
            exp = self.unary()
            return Node("pow", (base, exp), pos=tok[2])
        return base

    def postfix(self):
        node = self.primary()
        while self.peek()[0] == "!":
            tok = self.take()
            node = Node("call", (node,), value="factorial", pos=tok[2])
        return node

    def primary(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "int":
            self.take()
            return Node("num", value=tok[1], pos=tok[2])
        if kind == "name":
            self.take()
            if self.peek()[0] == "(":
                name = tok[1]
                if name not in FUNCTIONS:
                    raise ParseError(f"unknown function {name!r}", self.text, tok[2])
                self.take("(")
                args = [self.expr()]
                while self.peek()[0] == ",":
                    self.take()
                    args.append(self.expr())
                self.take(")")
                if len(args) != FUNCTIONS[name]:
                    raise ParseError(f"{name} takes {FUNCTIONS[name]} argument(s), got {len(args)}",
                                     self.text, tok[2])
                return Node("call", tuple(args), value=name, pos=tok[2])
            return Node("sym", value=tok[1], pos=tok[2])
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        got = "end of input" if kind == "end" else repr(tok[1])
        raise ParseError(f"unexpected {got}", self.text, tok[2])


def parse(text):
    """Parse text into a :class:`Node` tree.

    >>> str(parse("binomial(n,k)^2*(-1)^k"))
    'binomial(n, k)^2*(-1)^k'
    """
    if not isinstance(text, str):
        raise TypeError("parse expects a string")
    p = _Parser(text)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", text, 0)
    node = p.expr()
    p.take("end")
    return node


def free_symbols(node):
    out = set()
    stack = [node]
    while stack:
        x = stack.pop()
        if x.op == "sym":
            out.add(x.value)
        stack.extend(x.args)
    return out


def num(v):
    v = qq(v)
    if isinstance(v, Fraction):
        return Node("div", (Node("num", value=v.numerator), Node("num", value=v.denominator)))
    if v < 0:
        return Node("neg", (Node("num", value=-v),))
    return Node("num", value=v)


def substitute(node, mapping):
    """Replace symbols by nodes."""
    if node.op == "sym":
        return mapping.get(node.value, node)
    if not node.args:
        return node
    return Node(node.op, tuple(substitute(a, mapping) for a in node.args), node.value, node.pos)


def shifted(node, var, s):
    """Node with ``var`` replaced by ``var + s``."""
    return substitute(node, {var: Node("add", (Node("sym", value=var), num(s)))})


# --------------------------------------------------------------- printing AST

_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}


def to_text(node, parent=0, right=False):
    op = node.op
    if op == "num":
        return str(node.value)
    if op == "sym":
        return node.value
    if op == "call":
        if node.value == "factorial":
            return f"factorial({to_text(node.args[0])})"
        return f"{node.value}({', '.join(to_text(a) for a in node.args)})"
    prec = _PREC[op]
    if op == "neg":
        s = "-" + to_text(node.args[0], prec)
    elif op == "pow":
        s = f"{to_text(node.args[0], prec + 1)}^{to_text(node.args[1], prec + 1)}"
    else:
        sym = {"add": " + ", "sub": " - ", "mul": "*", "div": "/"}[op]
        s = f"{to_text(node.args[0], prec)}{sym}{to_text(node.args[1], prec, True)}"
    if prec < parent or (right and prec == parent and op in ("add", "sub", "mul", "div")):
        s = f"({s})"
    return s


# ----------------------------------------------------------- field tower

def make_tower(vars_):
    """Nested fields QQ(v1)(v2)...; returns the list of fields, outermost last."""
    fields = []
    dom = QQ
    for v in vars_:
        dom = FracField(PolyRing(dom, v))
        fields.append(dom)
    return fields


def _gen_in(field, var):
    """The generator ``var`` as an element of ``field`` (or one of its coefficient fields)."""
    f = field
    while f is not QQ:
        if f.var == var:
            return field.convert(f.gen)
        f = f.ring.dom
    raise UnsupportedExpression(f"symbol {var!r} is not a variable of this problem")


def _is_int_const(x):
    return isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)


def _const_value(elem):
    """Rational value of a constant tower element, or None."""
    x = elem
    while not isinstance(x, (int, Fraction)):
        if type(x) is RatFun:
            if x.den.degree() != 0 or x.num.degree() > 0:
                return None
            x = x.num.constant_value()
        elif type(x) is Poly:
            if x.degree() > 0:
                return None
            x = x.constant_value()
        else:
            return None
    return x


def to_field(node, field):
    """Evaluate a rational expression into ``field`` (QQ or a tower field)."""
    op = node.op
    if op == "num":
        return field.convert(node.value)
    if op == "sym":
        if field is QQ:
            raise UnsupportedExpression(f"symbol {node.value!r} in a numeric context")
        return _gen_in(field, node.value)
    if op == "add":
        return to_field(node.args[0], field) + to_field(node.args[1], field)
    if op == "sub":
        return to_field(node.args[0], field) - to_field(node.args[1], field)
    if op == "mul":
        return to_field(node.args[0], field) * to_field(node.args[1], field)
    if op == "div":
        d = to_field(node.args[1], field)
        if not d:
            raise ZeroDivisionError("division by zero in expression")
        a = to_field(node.args[0], field)
        if field is QQ:
            return QQ.div(a, d)
        return a / d
    if op == "neg":
        return -to_field(node.args[0], field)
    if op == "pow":
        e = _const_value(to_field(node.args[1], QQ if not free_symbols(node.args[1]) else field))
        if e is None or not _is_int_const(e):
            raise UnsupportedExpression(f"non-integer or symbolic exponent in {to_text(node)}")
        b = to_field(node.args[0], field)
        e = int(e)
        if field is QQ:
            if e < 0:
                return QQ.div(1, Fraction(b) ** (-e))
            return qq(Fraction(b) ** e)
        return b ** e
    if op == "call":
        if free_symbols(node):
            raise UnsupportedExpression(f"{node.value} of a symbolic argument is not rational")
        return field.convert(evaluate(node, {}))
    raise UnsupportedExpression(f"unknown node {op}")


# ---------------------------------------------------------- exact evaluation

class _PV:
    """Value with a pole order: c * eps^(-order); order > 0 means a pole."""

    __slots__ = ("c", "o")

    def __init__(self, c, o=0):
        self.c = Fraction(c)
        self.o = o

    def __mul__(self, other):
        return _PV(self.c * other.c, self.o + other.o)

    def __truediv__(self, other):
        if not other.c:
            raise ZeroDivisionError("division by zero")
        return _PV(self.c / other.c, self.o - other.o)

    def __add__(self, other):
        if not self.c:
            return other
        if not other.c:
            return self
        if self.o == other.o:
            return _PV(self.c + other.c, self.o)
        return self if self.o > other.o else other

    def __neg__(self):
        return _PV(-self.c, self.o)

    def finite(self):
        if not self.c or self.o < 0:
            return Fraction(0)
        if self.o > 0:
            raise ZeroDivisionError("expression has a pole at this point")
        return self.c


def _fact_pv(x):
    if not _is_int_const(x):
        raise UnsupportedExpression(f"factorial of non-integer {x}")
    x = int(x)
    if x >= 0:
        return _PV(ifactorial(x))
    m = -x
    return _PV(Fraction((-1) ** (m - 1), ifactorial(m - 1)), 1)


def _binomial(a, b):
    if not _is_int_const(b):
        raise UnsupportedExpression(f"binomial with non-integer lower argument {b}")
    b = int(b)
    if b < 0 or (_is_int_const(a) and b > a):
        return Fraction(0)
    r = Fraction(1)
    for i in range(b):
        r = r * (a - i) / (i + 1)
    return r


def _pochhammer(x, m):
    if not _is_int_const(m):
        raise UnsupportedExpression(f"pochhammer with non-integer length {m}")
    m = int(m)
    r = Fraction(1)
    if m >= 0:
        for i in range(m):
            r *= x + i
        return r
    for i in range(1, -m + 1):
        d = x - i
        if not d:
            raise ZeroDivisionError("pochhammer pole")
        r /= d
    return r


def _ev(node, env):
    op = node.op
    if op == "num":
        return _PV(node.value)
    if op == "sym":
        try:
            return _PV(env[node.value])
        except KeyError:
            raise UnsupportedExpression(f"no value for symbol {node.value!r}") from None
    if op == "add":
        return _ev(node.args[0], env) + _ev(node.args[1], env)
    if op == "sub":
        return _ev(node.args[0], env) + (-_ev(node.args[1], env))
    if op == "mul":
        return _ev(node.args[0], env) * _ev(node.args[1], env)
    if op == "div":
        return _ev(node.args[0], env) / _ev(node.args[1], env)
    if op == "neg":
        return -_ev(node.args[0], env)
    if op == "pow":
        e = _ev(node.args[1], env).finite()
        if e.denominator != 1:
            raise UnsupportedExpression("non-integer exponent")
        b = _ev(node.args[0], env)
        e = int(e)
        if e >= 0:
            r = _PV(1)
            for _ in range(e):
                r = r * b
            return r
        if not b.c:
            raise ZeroDivisionError("zero to a negative power")
        return _PV(b.c ** e, b.o * e)
    if op == "call":
        vals = [_ev(a, env).finite() for a in node.args]
        name = node.value
        if name == "factorial":
            return _fact_pv(vals[0])
        if name == "binomial":
            return _PV(_binomial(vals[0], vals[1]))
        if name == "pochhammer":
            return _PV(_pochhammer(vals[0], vals[1]))
    raise UnsupportedExpression(f"cannot evaluate {op}")


def evaluate(node, env):
    """Exact rational value at a point.

    ``binomial(a, b)`` is zero for integer b < 0 and, when a is an integer,
    for b > a (finite support); otherwise it is the falling-factorial quotient; ``1/factorial(-m)`` is zero for m >= 1, and ratios of
    factorials at negative integers take their limiting values.
    """
    return qq(_ev(node, env).finite())


# ------------------------------------------------- hypergeometric structure

@dataclass(frozen=True)
class LinForm:
    """a*n + b*k + c with integer a, b and c in the parameter field."""

    a: int
    b: int
    c: object

    def shift(self, s):
        return LinForm(self.a, self.b, self.c + s)


def _split_const(c):
    """(key, offset) with c = key + offset, offset integer, key canonical mod ZZ."""
    v = _const_term(c)
    off = floor(v)
    return c - off, off


def _const_term(c):
    x = c
    while not isinstance(x, (int, Fraction)):
        if type(x) is RatFun:
            if x.den.degree() != 0:
                return 0
            x = x.num.coeff(0)
        elif type(x) is Poly:
            x = x.coeff(0)
        else:
            return 0
    return x


@dataclass
class HyperStructure:
    """rat * prod(factorial(L)^e) * prod(base^(L))."""

    rat: object
    gammas: list
    powers: list

    def mul(self, other, sign=1):
        return HyperStructure(
            self.rat * other.rat if sign == 1 else self.rat / other.rat,
            self.gammas + [(L, e * sign) for L, e in other.gammas],
            self.powers + [(b, L if sign == 1 else LinForm(-L.a, -L.b, -L.c)) for b, L in other.powers],
        )

    def power(self, e):
        return HyperStructure(self.rat ** e, [(L, x * e) for L, x in self.gammas],
                              [(b, LinForm(L.a * e, L.b * e, L.c * e)) for b, L in self.powers])

    def merged_gammas(self):
        acc = {}
        order = []
        for L, e in self.gammas:
            key = (L.a, L.b, L.c)
            if key not in acc:
                acc[key] = 0
                order.append((key, L))
            acc[key] += e
        return [(L, acc[key]) for key, L in order if acc[key]]


class _Ctx:
    def __init__(self, n, k, field):
        self.n = n
        self.k = k
        self.field = field
        self.pfield = field.ring.dom.ring.dom if k and n else None


def _has_special(node):
    if node.op == "call":
        return True
    if node.op == "pow":
        return bool(free_symbols(node.args[1])) or _has_special(node.args[0])
    return any(_has_special(a) for a in node.args)


def _linform(node, n, k, field):
    """Integer-linear form in n, k of a subexpression; raises if not of that shape."""
    val = to_field(node, field)
    if type(val) is not RatFun or val.den.degree() != 0:
        raise UnsupportedExpression(f"argument {to_text(node)} is not integer-linear in {n}, {k}")
    pk = val.num
    if pk.degree() > 1:
        raise UnsupportedExpression(f"argument {to_text(node)} is not integer-linear in {n}, {k}")
    b = _const_value(pk.coeff(1)) if pk.degree() == 1 else 0
    rest = pk.coeff(0)
    if b is None or not _is_int_const(b):
        raise UnsupportedExpression(f"coefficient of {k} in {to_text(node)} is not an integer")
    if type(rest) is not RatFun or rest.den.degree() != 0 or rest.num.degree() > 1:
        raise UnsupportedExpression(f"argument {to_text(node)} is not integer-linear in {n}, {k}")
    pn = rest.num
    a = _const_value(pn.coeff(1)) if pn.degree() == 1 else 0
    if a is None or not _is_int_const(a):
        raise UnsupportedExpression(f"coefficient of {n} in {to_text(node)} is not an integer")
    c = pn.coeff(0)
    return LinForm(int(a), int(b), c)


def structure(node, n, k, field):
    """Factor a product-form expression into rational part, factorials and powers.

    ``field`` must be the tower P(n)(k) where P holds all other symbols.
    """
    if not _has_special(node):
        return HyperStructure(to_field(node, field), [], [])
    op = node.op
    if op in ("mul", "div"):
        a = structure(node.args[0], n, k, field)
        b = structure(node.args[1], n, k, field)
        return a.mul(b, 1 if op == "mul" else -1)
    if op == "neg":
        s = structure(node.args[0], n, k, field)
        return HyperStructure(-s.rat, s.gammas, s.powers)
    if op == "pow":
        base, exp = node.args
        if not free_symbols(exp) or not (free_symbols(exp) & {n, k}):
            ev = to_field(exp, field)
            e = _const_value(ev)
            if e is None or not _is_int_const(e):
                raise UnsupportedExpression(f"exponent {to_text(exp)} must be an integer")
            return structure(base, n, k, field).power(int(e))
        if free_symbols(base) & {n, k} or _has_special(base):
            raise UnsupportedExpression(f"power {to_text(node)} has a variable base and exponent")
        L = _linform(exp, n, k, field)
        b = to_field(base, field.ring.dom.ring.dom)
        if not b:
            raise UnsupportedExpression("zero base with symbolic exponent")
        return HyperStructure(field.one, [], [(b, L)])
    if op == "call":
        name = node.value
        if name == "factorial":
            L = _linform(node.args[0], n, k, field)
            return HyperStructure(field.one, [(L, 1)], [])
        if name == "binomial":
            A = _linform(node.args[0], n, k, field)
            B = _linform(node.args[1], n, k, field)
            C = LinForm(A.a - B.a, A.b - B.b, A.c - B.c)
            return HyperStructure(field.one, [(A, 1), (B, -1), (C, -1)], [])
        if name == "pochhammer":
            X = _linform(node.args[0], n, k, field)
            M = _linform(node.args[1], n, k, field)
            top = LinForm(X.a + M.a, X.b + M.b, X.c + M.c - 1)
            bot = LinForm(X.a, X.b, X.c - 1)
            return HyperStructure(field.one, [(top, 1), (bot, -1)], [])
    if op in ("add", "sub"):
        raise UnsupportedExpression("sums of non-rational terms are not hypergeometric in general")
    raise UnsupportedExpression(f"unsupported construct {op}")


def _lin_value(L, n, k, field):
    return field.convert(_gen_in(field, n)) * L.a + _gen_in(field, k) * L.b + field.convert(L.c)


def rationalize(hs, n, k, field):
    """Collapse a structure whose factorials and powers cancel up to integer shifts."""
    val = hs.rat
    groups = {}
    for L, e in hs.merged_gammas():
        key_c, off = _split_const(L.c)
        groups.setdefault((L.a, L.b, key_c), []).append((off, e))
    for (a, b, kc), items in groups.items():
        if sum(e for _, e in items):
            raise UnsupportedExpression("factorials do not cancel to a rational function")
        base = min(off for off, _ in items)
        for off, e in items:
            s = off - base
            if not s:
                continue
            Lb = _lin_value(LinForm(a, b, kc + base), n, k, field)
            prod = field.one
            for i in range(1, s + 1):
                prod = prod * (Lb + i)
            val = val * prod ** e
    pw = {}
    for bval, L in hs.powers:
        key = bval
        acc = pw.get(key)
        pw[key] = L if acc is None else LinForm(acc.a + L.a, acc.b + L.b, acc.c + L.c)
    for bval, L in pw.items():
        if L.a or L.b:
            raise UnsupportedExpression("exponential factors do not cancel")
        cv = _const_value(field.convert(L.c))
        if cv is None or not _is_int_const(cv):
            raise UnsupportedExpression("symbolic exponent left after cancellation")
        val = val * field.convert(bval) ** int(cv)
    return val


# --------------------------------------------------------------- printing

def _sparse(elem):
    """Flatten a polynomial tower element into {exponents: Fraction}; None if not polynomial."""
    if isinstance(elem, (int, Fraction)):
        return {(): Fraction(elem)} if elem else {}
    if type(elem) is RatFun:
        if elem.den.degree() != 0:
            return None
        return _sparse(elem.num)
    if type(elem) is Poly:
        out = {}
        for i, c in enumerate(elem.coeffs):
            if not c:
                continue
            sub = _sparse(c)
            if sub is None:
                return None
            for mono, v in sub.items():
                out[(i,) + mono] = v
        return out
    return None


def _vars_of(elem):
    vs = []
    x = elem.field if type(elem) is RatFun else elem.ring
    while x is not QQ:
        vs.append(x.var)
        x = x.ring.dom if isinstance(x, FracField) else x.dom
    return vs


def format_sparse(sp, vars_):
    if not sp:
        return "0"
    nv = len(vars_)

    def full(m):
        return tuple(m) + (0,) * (nv - len(m))

    items = sorted(((full(m), c) for m, c in sp.items()), key=lambda mc: (-sum(mc[0]), [-e for e in mc[0]]))
    parts = []
    for mono, c in items:
        mvars = [(v if e == 1 else f"{v}^{e}") for v, e in zip(vars_, mono) if e]
        mstr = "*".join(mvars)
        neg = c < 0
        a = -c if neg else c
        if not mstr:
            body = str(a)
        elif a == 1:
            body = mstr
        else:
            body = f"{a}*{mstr}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def clear_denominators(f):
    """For f in a field P(v): return (num, den) polynomials over fully polynomial coefficients.

    Works level by level using lcms of coefficient denominators.
    """
    num, den = f.num, f.den
    dom = f.field.ring.dom
    if dom is QQ:
        from math import lcm
        m = 1
        for c in num.coeffs + den.coeffs:
            m = lcm(m, Fraction(c).denominator)
        return num.scale(m), den.scale(m)
    inner_ring = dom.ring
    L = inner_ring.one
    for c in num.coeffs + den.coeffs:
        if c.den.degree() > 0:
            L = poly_lcm(L, c.den)
    Lf = dom.convert(L)
    num = num.scale(Lf)
    den = den.scale(Lf)
    # deeper levels: clear the coefficient polynomials jointly
    if inner_ring.dom is not QQ:
        mult = inner_ring.dom.one
        for c in num.coeffs + den.coeffs:
            for cc in c.num.coeffs:
                if type(cc) is RatFun and cc.den.degree() > 0:
                    mult = mult * cc.den
        num = num.scale(dom.convert(mult))
        den = den.scale(dom.convert(mult))
    else:
        from math import lcm
        m = 1
        for c in num.coeffs + den.coeffs:
            for cc in c.num.coeffs:
                m = lcm(m, Fraction(cc).denominator)
        num = num.scale(m)
        den = den.scale(m)
    return num, den


def _int_content(sp):
    from math import gcd
    g = 0
    for v in sp.values():
        g = gcd(g, Fraction(v).numerator)
    return g or 1


def format_value(x):
    """Readable text for a tower element that re-parses to the same value."""
    if isinstance(x, (int, Fraction)):
        return str(x)
    if type(x) is Poly:
        sp = _sparse(x)
        if sp is not None:
            return format_sparse(sp, _vars_of(x))
        return str(x)
    if type(x) is RatFun:
        vars_ = _vars_of(x)
        if x.den.degree() == 0 and _sparse(x.num) is not None:
            return format_sparse(_sparse(x.num), vars_)
        n, d = clear_denominators(x)
        sn, sd = _sparse(n), _sparse(d)
        if sn is None or sd is None:
            return str(x)
        # normalize: denominator with positive leading term, shared integer content removed
        g = _int_content(sd)
        h = _int_content(sn)
        from math import gcd
        c = gcd(g, h)
        lead = sorted(sd.items(), key=lambda mc: (-sum(mc[0]), [-e for e in mc[0]]))[0][1]
        if lead < 0:
            c = -c
        sn = {m: v / c for m, v in sn.items()}
        sd = {m: v / c for m, v in sd.items()}
        ns = format_sparse(sn, vars_)
        ds = format_sparse(sd, vars_)
        if ds == "1":
            return ns
        if len(sn) > 1:
            ns = f"({ns})"
        if len(sd) > 1 or "*" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"
    return str(x)


def format_poly_expanded(p):
    return format_value(p)
