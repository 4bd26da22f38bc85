import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import F, R, X, monic_linear_products, polys, small_rationals, to_sympy, x
from telescope.arith import DomainError, FracField, PolyRing, QQ, poly_gcd
from telescope.linalg import Matrix, nullspace, rank, solve
from telescope.rational import der, dispersion, partial_fractions, shift, shift_resonances


def test_der_and_shift():
    f = 1 / (x ** 2 + 1)
    assert der(f) == -2 * x / (x ** 2 + 1) ** 2
    assert shift(f, 1) == 1 / (x ** 2 + 2 * x + 2)


@settings(max_examples=100, deadline=None)
@given(polys(0, 6), monic_linear_products(), st.sampled_from(["squarefree", "irreducible"]))
def test_partial_fractions_recombine(a, b, mode):
    f = F.convert(a) / F.convert(b)
    pf = partial_fractions(f, mode)
    assert pf.recombine() == f
    for num, base, e in pf.terms:
        bound = base.degree() * (e if mode == "squarefree" else 1)
        assert num.degree() < bound


def _brute_dispersion(p):
    best = 0
    for i in range(60):
        if poly_gcd(p, p.shift(i)).degree() > 0:
            best = i
    return best


def test_dispersion_example():
    assert dispersion(x * (x + 3) * (x ** 2 - 2)) == 3


@settings(max_examples=100, deadline=None)
@given(monic_linear_products(spread=20))
def test_dispersion_brute_force(p):
    if p.degree() < 1:
        return
    assert dispersion(p) == _brute_dispersion(p)


def test_shift_resonances_parametric():
    Ra = PolyRing(QQ, "a")
    Fa = FracField(Ra)
    Rx = PolyRing(Fa, "x")
    a = Rx.convert(Fa.convert(Ra.gen))
    X_ = Rx.gen
    assert shift_resonances((X_ + a) * (X_ - 1), X_ + a + 4) == [-4]


def test_dispersion_constant_raises():
    with pytest.raises(DomainError):
        dispersion(R.one)


@st.composite
def qq_matrices(draw):
    r = draw(st.integers(1, 5))
    c = draw(st.integers(1, 6))
    rows = [[draw(st.integers(-3, 3)) for _ in range(c)] for _ in range(r)]
    # repeat a row combination sometimes so kernels are nontrivial
    if draw(st.booleans()) and r > 1:
        rows[-1] = [a + 2 * b for a, b in zip(rows[0], rows[1])]
    return rows


@settings(max_examples=200, deadline=None)
@given(qq_matrices())
def test_nullspace_qq(rows):
    m = Matrix(rows, QQ)
    ker = nullspace(m)
    assert len(ker) == m.ncols - sympy.Matrix(rows).rank()
    for v in ker:
        assert all(not s for s in m.mul_vector(v))
        last = next(a for a in reversed(v) if a)
        assert last > 0
    assert rank(m) == sympy.Matrix(rows).rank()


@st.composite
def poly_matrices(draw):
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 5))
    rows = [[F.convert(draw(polys(0, 2))) for _ in range(c)] for _ in range(r)]
    if draw(st.booleans()) and r > 1:
        rows[-1] = [a * (x + 1) - b for a, b in zip(rows[0], rows[1])]
    return rows


@settings(max_examples=60, deadline=None)
@given(poly_matrices())
def test_nullspace_function_field(rows):
    m = Matrix(rows, F)
    ker = nullspace(m)
    srank = sympy.Matrix([[to_sympy(e) for e in r] for r in rows]).rank(simplify=True)
    assert len(ker) == m.ncols - srank
    for v in ker:
        assert all(not s for s in m.mul_vector([F.convert(e) for e in v]))


@settings(max_examples=100, deadline=None)
@given(qq_matrices(), st.lists(small_rationals(), min_size=6, max_size=6))
def test_solve_qq(rows, xs):
    m = Matrix(rows, QQ)
    rhs = m.mul_vector(xs[: m.ncols])
    sol = solve(m, rhs)
    assert sol is not None and m.mul_vector(sol) == rhs


def test_solve_inconsistent():
    assert solve(Matrix([[1, 1], [2, 2]], QQ), [1, 3]) is None
