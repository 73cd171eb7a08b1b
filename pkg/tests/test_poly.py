import pytest
import sympy as sp
from hypothesis import given, strategies as st

from starcoh.poly import BasePoly, PolySeries, monomials_up_to
from starcoh.scalar import Scalar

from conftest import series_to_sympy

X = sp.symbols("x1:4")
H = sp.Symbol("h")

coeffs = st.builds(lambda a, b, c: Scalar(a, b) / c, st.integers(-5, 5), st.integers(-3, 3), st.integers(1, 4))
exps3 = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps3, coeffs, max_size=5).map(lambda t: BasePoly(3, t))
series = st.dictionaries(st.tuples(st.integers(-1, 3), exps3), coeffs, max_size=5).map(
    lambda t: PolySeries(3, t))


def test_monomials_up_to_counts():
    assert len(monomials_up_to(2, 2)) == 6
    assert len(monomials_up_to(4, 2)) == 15
    assert sorted(monomials_up_to(2, 2, 2)) == [(0, 2), (1, 1), (2, 0)]


def test_zero_coefficients_dropped():
    p = BasePoly(2, {(1, 0): 0, (0, 1): 2})
    assert list(p.terms) == [(0, 1)]
    assert not BasePoly(2)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        BasePoly.var(2, 0) + BasePoly.var(3, 0)
    with pytest.raises(IndexError):
        BasePoly.var(2, 5)


def test_render_and_json():
    p = BasePoly(2, {(2, 0): Scalar(1, 1), (0, 1): -1, (0, 0): 3})
    assert p.render(["q", "p"]) == "3 + -p + (1+1*i)*q^2"
    assert BasePoly.from_json(2, p.to_json()) == p


@given(polys, polys, polys)
def test_ring_against_sympy(a, b, c):
    expr = series_to_sympy(a * b - c, X, H)
    assert expr == sp.expand(series_to_sympy(a, X, H) * series_to_sympy(b, X, H) - series_to_sympy(c, X, H))


@given(polys, st.integers(0, 2), st.integers(1, 3))
def test_diff_against_sympy(a, i, times):
    assert series_to_sympy(a.diff(i, times), X, H) == sp.expand(sp.diff(series_to_sympy(a, X, H), X[i], times))


@given(series, series)
def test_series_product_and_hbar_derivative(a, b):
    A, B = series_to_sympy(a, X, H), series_to_sympy(b, X, H)
    assert series_to_sympy(a * b, X, H) == sp.expand(A * B)
    assert series_to_sympy(a.hbar_derivative(), X, H) == sp.expand(sp.diff(A, H))
    assert series_to_sympy(a.shift(2), X, H) == sp.expand(A * H ** 2)


@given(series, exps3)
def test_series_diff_multi(a, alpha):
    expr = series_to_sympy(a, X, H)
    for v, n in zip(X, alpha):
        expr = sp.diff(expr, v, n)
    assert series_to_sympy(a.diff_multi(alpha), X, H) == sp.expand(expr)


@given(series, st.integers(-1, 3))
def test_truncate_keeps_low_orders(a, n):
    t = a.truncate(n)
    assert all(k <= n for k in t.orders())
    assert (a - t).truncate(n) == PolySeries.zero(3)
