from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import small_rationals
from telescope.arith import DomainError, FracField, PolyRing, QQ
from telescope.expr import format_value, parse, to_field
from telescope.ore import (AnnihilatedSeries, OreOp, SingularPointError, annihilator_product,
                           annihilator_sum, format_operator, lclm, ode_to_rec, ore_divmod, ore_mul,
                           ore_reduce, parse_operator, unroll)
from telescope.verify import check_recurrence_on_values

Kx = FracField(PolyRing(QQ, "x"))
Kn = FracField(PolyRing(QQ, "n"))
X = sympy.Symbol("x")


def D(text):
    return parse_operator(text, "D", Kx)


def S(text):
    return parse_operator(text, "S", Kn)


def test_commutation():
    assert str(ore_mul(D("D"), D("x"))) == "1 + x*D"
    assert str(ore_mul(S("S"), S("n"))) == "(n + 1)*S"


@st.composite
def operators(draw, gen, max_order=2):
    K = Kx if gen == "D" else Kn
    v = K.gen
    order = draw(st.integers(0, max_order))
    cs = []
    for _ in range(order + 1):
        a, b = draw(small_rationals()), draw(small_rationals())
        cs.append(v * a + b)
    if not cs[-1]:
        cs[-1] = K.one
    return OreOp(cs, gen, K)


@st.composite
def sample_functions(draw, K):
    v = K.gen
    a, b, c = draw(small_rationals()), draw(small_rationals()), draw(st.integers(1, 5))
    return (v * a + b) / (v * v + c)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["D", "S"]).flatmap(
    lambda g: st.tuples(operators(g), operators(g), sample_functions(Kx if g == "D" else Kn))))
def test_mul_is_composition(ops):
    a, b, f = ops
    assert ore_mul(a, b).apply(f) == a.apply(b.apply(f))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["D", "S"]).flatmap(lambda g: st.tuples(operators(g), operators(g))))
def test_right_division(ops):
    a, b = ops
    q, r = ore_divmod(a, b)
    assert ore_mul(q, b) + r == a
    assert r.order < b.order or not r


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["D", "S"]).flatmap(
    lambda g: st.tuples(operators(g), operators(g), operators(g))))
def test_mul_associative(ops):
    a, b, c = ops
    assert ore_mul(ore_mul(a, b), c) == ore_mul(a, ore_mul(b, c))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["D", "S"]).flatmap(
    lambda g: st.tuples(operators(g, 3), operators(g, 3))))
def test_lclm_is_common_multiple(ops):
    a, b = ops
    L = lclm(a, b)
    assert not ore_reduce(L, a) and not ore_reduce(L, b)
    assert L.order <= a.order + b.order


def test_lclm_example():
    assert str(lclm(S("S-2"), S("S-3"))) == "6 - 5*S + S^2"


def _values(fn, count=14):
    return [fn(n) for n in range(count)]


def test_closure_on_sequences():
    fact = S("S - (n+1)")
    two = S("S - 2")
    fib = S("S^2 - S - 1")
    fibs = [0, 1]
    while len(fibs) < 16:
        fibs.append(fibs[-1] + fibs[-2])
    s1 = _values(lambda n: factorial(n) + 2 ** n)
    assert check_recurrence_on_values(annihilator_sum(fact, two), s1).ok
    s2 = _values(lambda n: factorial(n) * 2 ** n)
    assert check_recurrence_on_values(annihilator_product(fact, two), s2).ok
    s3 = _values(lambda n: fibs[n] ** 2)
    L = annihilator_product(fib, fib)
    assert L.order == 3 and check_recurrence_on_values(L, s3).ok


@st.composite
def recurrences(draw):
    """Order 1 or 2 recurrences whose leading coefficient has no root at n >= 0."""
    n = Kn.gen
    order = draw(st.integers(1, 2))
    cs = [n * draw(st.integers(-3, 3)) + draw(st.integers(-3, 3)) for _ in range(order)]
    cs.append(n + draw(st.integers(1, 4)))
    init = tuple(draw(st.integers(-5, 5)) for _ in range(order))
    return AnnihilatedSeries(OreOp(cs, "S", Kn), init)


@settings(max_examples=40, deadline=None)
@given(recurrences(), recurrences())
def test_closure_on_unrolled_instances(a, b):
    N = 25
    u, v = unroll(a, N), unroll(b, N)
    s = annihilator_sum(a.annihilator, b.annihilator)
    p = annihilator_product(a.annihilator, b.annihilator)
    assert check_recurrence_on_values(s, [x + y for x, y in zip(u, v)]).ok or _singular(s, N)
    assert check_recurrence_on_values(p, [x * y for x, y in zip(u, v)]).ok or _singular(p, N)


def _singular(op, N):
    """Closure operators may have a leading coefficient vanishing at some n >= 0."""
    from telescope.arith import integer_roots
    return any(0 <= z < N for z in integer_roots(op.cleared()[-1]))


def test_closure_differential():
    assert str(annihilator_product(D("D-1"), D("D-1"))) == "-2 + D"
    sq = annihilator_product(D("2-(1-4*x)*D"), D("2-(1-4*x)*D"))
    assert sq.same_up_to_scalar(D("4 + (4*x-1)*D"))
    # exp(x) + 1/(1-x)
    L = annihilator_sum(D("D-1"), D("(1-x)*D-1"))
    f = sympy.exp(X) + 1 / (1 - X)
    acc = sum(sympy.sympify(format_value(c).replace("^", "**")) * sympy.diff(f, X, i)
              for i, c in enumerate(L.coeffs))
    assert sympy.simplify(acc) == 0


# D-finite functions with hand-written annihilators, checked by sympy first
FUNCTIONS = [
    (sympy.exp(X), "D-1"),
    (1 / sympy.sqrt(1 - 4 * X), "2-(1-4*x)*D"),
    (sympy.atan(X), "2*x*D+(1+x^2)*D^2"),
    (sympy.exp(X) / (1 - X), "(x-2) + (1-x)*D"),
    ((1 + X) ** sympy.Rational(1, 3), "-1/3 + (1+x)*D"),
    (sympy.log(1 - X), "-D + (1-x)*D^2"),
]


@pytest.mark.parametrize("f,text", FUNCTIONS)
def test_ode_to_rec_against_series(f, text):
    L = D(text)
    acc = sum(sympy.sympify(format_value(c).replace("^", "**")) * sympy.diff(f, X, i)
              for i, c in enumerate(L.coeffs))
    assert sympy.simplify(acc) == 0
    rec, valid = ode_to_rec(L)
    N = 30
    ser = sympy.series(f, X, 0, N).removeO()
    coeffs = [Fraction(str(ser.coeff(X, i))) for i in range(N)]
    assert check_recurrence_on_values(rec, coeffs[valid:], offset=valid).ok
    r = rec.order
    init = coeffs[valid:valid + r]
    got = unroll(AnnihilatedSeries(rec, tuple(init), valid), N - valid)
    assert got == coeffs[valid:]


def test_ode_to_rec_examples():
    op, d = ode_to_rec(D("D-1"))
    assert str(op) == "-1 + (n + 1)*S" and d == 0
    op, _ = ode_to_rec(D("2-(1-4*x)*D"))
    assert str(op) == "(-4*n - 2) + (n + 1)*S"
    # log(1-x): the raw relation n(n+1)c(n+1) = n^2 c(n) carries a factor n
    op, d = ode_to_rec(D("-D + (1-x)*D^2"))
    assert str(op) == "-n + (n + 1)*S" and d == 1


def test_unroll_examples():
    central = unroll(AnnihilatedSeries(S("(n+1)*S-(4*n+2)"), (1,)), 6)
    assert central == [1, 2, 6, 20, 70, 252]
    apery = S("(n+1)^3 - (34*n^3+153*n^2+231*n+117)*S + (n+2)^3*S^2")
    assert unroll(AnnihilatedSeries(apery, (1, 5)), 5) == [1, 5, 73, 1445, 33001]


def test_unroll_singular():
    with pytest.raises(SingularPointError) as ei:
        unroll(AnnihilatedSeries(S("n*S - 1"), (1,)), 4)
    assert ei.value.index == 1


def test_unroll_needs_initial_values():
    with pytest.raises(DomainError):
        unroll(AnnihilatedSeries(S("S^2-S-1"), (1,)), 5)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["D", "S"]).flatmap(operators))
def test_operator_string_roundtrip(op):
    back = parse_operator(format_operator(op), op.gen, op.field)
    assert back == op
