import pytest
from hypothesis import given, strategies as st

from starcoh.forms import (
    NoPrimitiveError,
    NotClosedError,
    ScalarFormSeries,
    d_exterior,
    euler_homotopy,
    wedge_sign,
)
from starcoh.poly import BasePoly
from starcoh.scalar import Scalar

DIM = 3
coeffs = st.builds(lambda a, b: Scalar(a, b), st.integers(-4, 4), st.integers(-2, 2))
exps = st.tuples(*[st.integers(0, 2)] * DIM)
dxs = st.sampled_from([(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)])
forms = st.dictionaries(st.tuples(st.integers(0, 2), dxs, exps), coeffs, max_size=6).map(
    lambda t: ScalarFormSeries(DIM, t))


def test_wedge_sign():
    assert wedge_sign((1,), (0,)) == (-1, (0, 1))
    assert wedge_sign((0,), (1,)) == (1, (0, 1))
    assert wedge_sign((0, 2), (1,)) == (-1, (0, 1, 2))
    assert wedge_sign((1,), (1,)) == (0, None)


def test_unsorted_indices_are_normalized():
    w = ScalarFormSeries(2, {(0, (1, 0), (0, 0)): 1})
    assert w == ScalarFormSeries(2, {(0, (0, 1), (0, 0)): -1})
    assert not ScalarFormSeries(2, {(0, (1, 1), (0, 0)): 1})


def test_d_of_function():
    # d(x0^2 x1) = 2 x0 x1 dx0 + x0^2 dx1
    f = ScalarFormSeries(2, {(0, (), (2, 1)): 1})
    assert d_exterior(f) == ScalarFormSeries(2, {(0, (0,), (1, 1)): 2, (0, (1,), (2, 0)): 1})


@given(forms)
def test_d_squared_zero(w):
    assert not d_exterior(d_exterior(w))


@given(forms)
def test_homotopy_of_exact_is_primitive(w):
    dw = d_exterior(w)
    assert d_exterior(euler_homotopy(dw)) == dw


@given(forms)
def test_json_roundtrip(w):
    assert ScalarFormSeries.from_json(DIM, w.to_json()) == w


def test_not_closed_raises():
    w = ScalarFormSeries(2, {(0, (0,), (0, 1)): 1})
    with pytest.raises(NotClosedError):
        euler_homotopy(w)


def test_constant_function_has_no_primitive():
    with pytest.raises(NoPrimitiveError):
        euler_homotopy(ScalarFormSeries(2, {(0, (), (0, 0)): 1}))


def test_from_matrix_and_components():
    w = ScalarFormSeries.from_matrix([[0, 1], [-1, 0]], k=1)
    assert w.components(1) == {(0, 1): BasePoly.const(2, 1)}
    assert w.hbar_orders() == [1]
    assert w.hbar_derivative() == ScalarFormSeries.from_matrix([[0, 1], [-1, 0]])
