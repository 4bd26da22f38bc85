import pytest
from hypothesis import given, settings, strategies as st

from telescope.arith import QQ, FracField, PolyRing
from telescope.celine import (KFreeRecurrence, celine_sum_recurrence, celine_sum_recurrences,
                              kfree_recurrence, wegschaider_lift)
from telescope.hyper import compile_term
from telescope.ore import OreOp
from telescope.verify import check_recurrence_on_values, eval_sum

Kn = FracField(PolyRing(QQ, "n"))


def test_pascal():
    recs = kfree_recurrence(compile_term("binomial(n,k)"), 1, 1)
    assert len(recs) == 1
    # -f(n,k) - f(n,k+1) + f(n+1,k+1) = 0, up to scalar
    c = recs[0].coefficients
    assert set(c) == {(0, 0), (0, 1), (1, 1)}
    assert c[(0, 0)] == c[(0, 1)] == -c[(1, 1)]


def test_binomial_squared_small_window_empty():
    assert kfree_recurrence(compile_term("binomial(n,k)^2"), 1, 1) == []
    assert celine_sum_recurrence(compile_term("binomial(n,k)^2"), 1, 1) is None


@pytest.mark.parametrize("e,r,s", [
    ("binomial(n,k)", 1, 1),
    ("binomial(n,k)^2", 2, 2),
    ("binomial(n,k)*2^k", 1, 1),
    ("binomial(n-k,k)", 2, 2),
    ("binomial(n,k)*binomial(n+k,k)", 2, 2),
])
def test_sum_recurrence_annihilates_sums(e, r, s):
    t = compile_term(e)
    for rec in kfree_recurrence(t, r, s):
        assert rec.check(t)
    ops = celine_sum_recurrences(t, r, s)
    assert ops
    vals = [eval_sum(e, n) for n in range(16)]
    for op in ops:
        assert check_recurrence_on_values(op, vals).ok


def test_wegschaider_lift_pascal_combination():
    # f(n,k) - f(n+1,k+1) - f(n,k+2) + f(n+1,k+2) = 0 for binomial(n,k)
    rec = KFreeRecurrence({(0, 0): 1, (1, 1): -1, (0, 2): -1, (1, 2): 1}, 1, 2, Kn)
    assert rec.check(compile_term("binomial(n,k)"))
    assert not any(rec.column_sums(0))
    lifted = wegschaider_lift(rec)
    P = OreOp(lifted.delta_free(Kn), "S", Kn)
    assert P.same_up_to_scalar(OreOp([-2, 1], "S", Kn))


def test_wegschaider_constructed():
    # Delta_k (S_n - 2) = (S_k - 1)(S_n - 2)
    rec = KFreeRecurrence({(1, 1): 1, (0, 1): -2, (1, 0): -1, (0, 0): 2}, 1, 1, Kn)
    lifted = wegschaider_lift(rec)
    assert lifted.multiplier == 1
    P = OreOp(lifted.delta_free(Kn), "S", Kn)
    assert P.same_up_to_scalar(OreOp([-2, 1], "S", Kn))


def test_wegschaider_unchanged_without_left_factor():
    rec = kfree_recurrence(compile_term("binomial(n,k)"), 1, 1)[0]
    lifted = wegschaider_lift(rec)
    assert lifted.multiplier == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2), st.integers(1, 2), st.integers(0, 2))
def test_random_binomial_products(a, b, c):
    e = f"binomial({b}*n + {c}, k)*binomial(n + {a}, k)"
    t = compile_term(e)
    for rec in kfree_recurrence(t, 2, 2):
        assert rec.check(t)
