from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from telescope.arith import DomainError, FracField, PolyRing, QQ
from telescope.hyper import compile_term, zeilberger
from telescope.ore import OreOp, parse_operator
from telescope.verify import (boundary_terms, certificate_poles, check_recurrence_on_values,
                              check_telescoper_sum, eval_sum, support_range)

Kn = FracField(PolyRing(QQ, "n"))


@pytest.mark.parametrize("e,n,value", [
    ("binomial(n,k)", 5, 32),
    ("binomial(n,k)^2*binomial(n+k,k)^2", 2, 73),
    ("binomial(2*n-2*k,n-k)*binomial(2*k,k)", 3, 64),
    ("binomial(n-k,k)", 10, 89),
    ("(-1)^k*binomial(n,k)", 0, 1),
])
def test_eval_sum(e, n, value):
    assert eval_sum(e, n) == value


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 12), st.integers(0, 12))
def test_vandermonde(n, m):
    assert eval_sum("binomial(n,k)*binomial(m,n-k)", n, env={"m": m}) == comb(n + m, n)


def test_explicit_range():
    assert eval_sum("k^2", 0, k_range=(1, 10)) == 385


def test_support_range():
    assert support_range("binomial(n,k)", 4) == (0, 4)
    assert support_range("binomial(n-k,k)", 7) == (0, 3)
    assert support_range("2^k", 3) is None
    with pytest.raises(DomainError):
        eval_sum("1/(k+1)", 3)


def test_check_recurrence_on_values():
    op = OreOp([-2, 1], "S", Kn)
    assert check_recurrence_on_values(op, [1, 2, 4, 8]).ok
    bad = check_recurrence_on_values(op, [1, 2, 5, 10])
    assert not bad.ok and bad.warnings == ["fails at n = 1"]
    with pytest.raises(DomainError):
        check_recurrence_on_values(op, [1])


def test_check_telescoper_sum_rejects_wrong_certificate():
    t = compile_term("binomial(n,k)")
    op = OreOp([-2, 1], "S", Kn)
    assert not check_telescoper_sum(op, t.field.zero, t).ok


def test_poles_and_boundary():
    t = compile_term("binomial(n,k)")
    res = zeilberger(t)
    assert certificate_poles(res.certificate) == ["k = n + 1"]
    # g = R f vanishes at the natural boundaries k = n + 1 and k = 0 (limit at the pole)
    assert boundary_terms(res.certificate, "binomial(n,k)", 5, 0, 5) == (0, 0)
