import pytest
import sympy as sp
from hypothesis import given, strategies as st

from starcoh.poly import PolySeries
from starcoh.scalar import I, Scalar
from starcoh.weyl import (
    LaurentFloorError,
    PoissonMatrix,
    Truncation,
    WeylElement,
    WeylForm,
    c1_bilinear,
    center_product,
    center_project,
    commutator,
    euler_E,
    graded_commutator,
    graded_product,
    hbar_derivative,
    ihbar_commutator,
    moyal_mul,
    rho,
)

from conftest import moyal_oracle, to_sympy_scalar

P2 = PoissonMatrix.from_omega([[0, 1], [-1, 0]])
T6 = Truncation(6)
Y = sp.symbols("y1:3")
XS = sp.symbols("x1:3")
H = sp.Symbol("h")

coeffs = st.builds(lambda a, b: Scalar(a, b), st.integers(-3, 3), st.integers(-2, 2))
y2 = st.tuples(st.integers(0, 3), st.integers(0, 3))
x2 = st.tuples(st.integers(0, 1), st.integers(0, 1))
elements = st.dictionaries(st.tuples(st.integers(0, 1), y2, x2), coeffs, max_size=4).map(
    lambda t: WeylElement(2, T6, t))
one_forms = st.dictionaries(st.tuples(st.sampled_from([(0,), (1,)]), st.integers(0, 1), y2, x2),
                            coeffs, max_size=3).map(lambda t: WeylForm(2, T6, 1, t))


def weyl_to_sympy(a):
    out = sp.Integer(0)
    for (dx, k, y, x), c in a.terms.items():
        assert dx == ()
        term = to_sympy_scalar(c) * H ** k
        for v, n in zip(Y, y):
            term *= v ** n
        for v, n in zip(XS, x):
            term *= v ** n
        out += term
    return sp.expand(out)


def cut(expr, cap):
    poly = sp.Poly(expr, *Y, H)
    keep = sp.Integer(0)
    for mon, c in poly.terms():
        *ys, k = mon
        if 2 * k + sum(ys) <= cap:
            keep += c * sp.prod([v ** n for v, n in zip(Y, ys)]) * H ** k
    return sp.expand(keep)


def test_poisson_convention():
    # omega . pi = 1 gives pi^{12} = -1
    assert P2.pi[0][1] == -1
    with pytest.raises(ValueError):
        PoissonMatrix([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        PoissonMatrix([[0, 1], [-1, 0]], omega=[[0, 1], [-1, 0]])


def test_canonical_commutator():
    y1, y2_ = WeylElement.y(2, T6, 0), WeylElement.y(2, T6, 1)
    assert commutator(y1, y2_, P2) == WeylElement(2, T6, {(1, (0, 0), (0, 0)): I})


def test_weyl_product_quadratic():
    y1 = WeylElement.y(2, T6, 0)
    y2_ = WeylElement.y(2, T6, 1)
    prod = moyal_mul(y1, y2_, P2)
    # y1 y2 + (i hbar / 2)
    assert prod == WeylElement(2, T6, {(0, (1, 1), (0, 0)): 1, (1, (0, 0), (0, 0)): I / 2})


@given(elements, elements)
def test_product_matches_sympy_oracle(a, b):
    pi = [[to_sympy_scalar(v) for v in row] for row in P2.pi]
    pi4 = [row + [0, 0] for row in pi] + [[0] * 4, [0] * 4]
    # x commutes with everything, so it rides along as a coefficient
    full = moyal_oracle(weyl_to_sympy(a), weyl_to_sympy(b), Y + XS, pi4, H, 6)
    expect = cut(full.as_expr(), 6)
    assert weyl_to_sympy(moyal_mul(a, b, P2)) == expect


@given(elements, elements, elements)
def test_associative(a, b, c):
    assert moyal_mul(moyal_mul(a, b, P2), c, P2) == moyal_mul(a, moyal_mul(b, c, P2), P2)


@given(elements, elements)
def test_center_product_is_projection(a, b):
    assert center_product(a, b, P2) == center_project(moyal_mul(a, b, P2))


@given(elements, elements)
def test_rho_is_derivation(a, b):
    # rho multiplies a term of Weyl degree d by -(i/2) d, and the product is graded
    lhs = rho(moyal_mul(a, b, P2))
    rhs = moyal_mul(rho(a), b, P2) + moyal_mul(a, rho(b), P2)
    assert lhs == rhs


@given(elements, elements)
def test_c1_is_coboundary_of_E(a, b):
    # E(ab) - E(a) b - a E(b) = i hbar c1(a, b); compare below the cap
    lhs = euler_E(moyal_mul(a, b, P2)) - moyal_mul(euler_E(a), b, P2) - moyal_mul(a, euler_E(b), P2)
    rhs = c1_bilinear(a, b, P2).retruncate(Truncation(8)).shift(1).scale(I).retruncate(T6)
    assert lhs.truncate(5) == rhs.truncate(5)


def test_euler_sign():
    y1 = WeylElement.y(2, T6, 0)
    assert euler_E(y1) == y1.scale(-I / 2)
    assert not euler_E(WeylElement.one(2, T6))


@given(one_forms, one_forms)
def test_graded_commutator_symmetry(a, b):
    # two odd forms: [a, b] = a*b + b*a = [b, a]
    assert graded_commutator(a, b, P2) == graded_commutator(b, a, P2)
    assert graded_commutator(a, b, P2) == graded_product(a, b, P2) + graded_product(b, a, P2)


@given(elements)
def test_central_elements_commute(a):
    c = WeylElement.central(PolySeries(2, {(0, (1, 1)): 3, (1, (0, 1)): I}), T6)
    assert not ihbar_commutator(c, a, P2)


def test_hbar_derivative_floor():
    a = WeylElement(2, T6, {(0, (2, 0), (0, 0)): 1, (1, (0, 0), (0, 0)): 1})
    assert hbar_derivative(a) == WeylElement(2, T6, {(0, (0, 0), (0, 0)): 1})
    low = Truncation(6, -1)
    b = WeylElement(2, low, {(0, (0, 0), (0, 0)): 1, (-1, (0, 0), (0, 0)): 1})
    with pytest.raises(LaurentFloorError):
        hbar_derivative(b)


def test_truncation_validation():
    with pytest.raises(ValueError):
        Truncation(-1)
    with pytest.raises(ValueError):
        Truncation(4, 1)
    with pytest.raises(LaurentFloorError):
        WeylElement(2, T6, {(-1, (0, 0), (0, 0)): 1})


def test_terms_above_cap_are_dropped():
    a = WeylElement(2, Truncation(2), {(0, (3, 0), (0, 0)): 1, (1, (0, 0), (0, 0)): 1})
    assert list(a.terms) == [((), 1, (0, 0), (0, 0))]


def test_form_index_validation():
    with pytest.raises(ValueError):
        WeylForm(2, T6, 1, {((0, 1), 0, (0, 0), (0, 0)): 1})
