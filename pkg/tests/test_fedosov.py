import random

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from starcoh.examples import BUILTIN_NAMES, builtin, pi_expansion
from starcoh.fedosov import (
    CurvaturePrescription,
    StarProductTable,
    TableReconstructionError,
    check_quantum_exponential,
    extract_table,
    flat_section,
    moyal_table,
    random_poly,
    star,
)
from starcoh.poly import BasePoly, PolySeries, exp_factorial, monomials_up_to
from starcoh.scalar import I, Scalar
from starcoh.weyl import PoissonMatrix, Truncation, WeylElement, WeylForm, graded_product
from starcoh.pipeline import random_weyl_form

from conftest import as_poly, cached_setup, cached_table, moyal_oracle, series_to_sympy, to_sympy_scalar

Q = sp.symbols("q p")
H = sp.Symbol("h")


def test_flat_gamma_vanishes():
    for name in ("moyal_r2", "moyal_r4"):
        S = cached_setup(name)
        assert not S.gamma.terms
        assert not S.residual()


def test_flat_star_matches_moyal_oracle():
    S = cached_setup("moyal_r2")
    pi = [[to_sympy_scalar(v) for v in row] for row in S.P.pi]
    mons = monomials_up_to(2, 4)
    for a in mons:
        for b in mons:
            f, g = BasePoly.monomial(a), BasePoly.monomial(b)
            got = as_poly(series_to_sympy(star(f, g, S), Q, H), Q, H)
            want = moyal_oracle(series_to_sympy(f, Q, H), series_to_sympy(g, Q, H), Q, pi, H, 4)
            assert got == want, (a, b)


def test_flat_section_is_taylor_expansion():
    S = cached_setup("moyal_r2")
    for e in monomials_up_to(2, 4):
        a = BasePoly.monomial(e)
        terms = {}
        for alpha in monomials_up_to(2, sum(e)):
            d = a.diff_multi(alpha)
            for x, c in d.terms.items():
                terms[(0, alpha, x)] = c / exp_factorial(alpha)
        assert flat_section(a, S) == WeylElement(2, S.trunc, terms)


def test_torus_gamma_closed_form():
    S = cached_setup("torus_h_omega1")
    # gamma = (hbar/2) (omega_1)_{ij} y^i dx^j with omega_1 = dtheta1 ^ dtheta2
    expect = WeylForm(4, S.trunc, 1, {((1,), 1, (1, 0, 0, 0), (0,) * 4): Scalar(1) / 2,
                                       ((0,), 1, (0, 1, 0, 0), (0,) * 4): Scalar(-1) / 2})
    assert S.gamma == expect
    assert not S.residual()


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_curvature_residual_and_normalization(name):
    S = cached_setup(name)
    assert not S.residual()
    assert not S.gamma.terms or S.gamma.min_degree() >= 3


def test_curved_gamma_nonzero():
    assert cached_setup("curved_toy").gamma.terms


@pytest.mark.parametrize("name", ["curved_toy", "torus_h2_omega1"])
def test_flat_sections(name):
    S = cached_setup(name)
    cap = S.trunc.degree_cap
    for e in monomials_up_to(S.dim, 3):
        u = flat_section(BasePoly.monomial(e), S)
        assert not S.D(u).truncate(cap - 1)
        assert center_is(u, BasePoly.monomial(e))


def center_is(u, a):
    from starcoh.weyl import center_project
    return center_project(u) == PolySeries.from_poly(a)


@given(st.integers(0, 10 ** 6), st.integers(0, 1))
def test_D_squared_vanishes(seed, q):
    S = cached_setup("curved_toy")
    a = random_weyl_form(random.Random(seed), 2, S.trunc, q)
    assert not S.D(S.D(a)).truncate(S.trunc.degree_cap - 2)


def test_quantum_exponential_axioms():
    for name in ("curved_toy", "torus_h_omega1"):
        assert check_quantum_exponential(cached_setup(name), degree=2)["ok"]


def test_canonical_relation():
    S = cached_setup("moyal_r2")
    q, p = BasePoly.var(2, 0), BasePoly.var(2, 1)
    assert star(q, p, S) - star(p, q, S) == PolySeries(2, {(1, (0, 0)): I})


@given(st.integers(0, 10 ** 6))
def test_first_order_is_poisson_bracket(seed):
    tab = cached_table("curved_toy", 3)
    rng = random.Random(seed)
    f, g = random_poly(rng, 2, 3), random_poly(rng, 2, 3)
    anti = (tab.apply(f, g) - tab.apply(g, f)).coeff(1)
    bracket = f.diff(0) * g.diff(1) - f.diff(1) * g.diff(0)
    assert anti == bracket.scale(I)
    assert tab.apply(f, g).coeff(0) == f * g


@given(st.integers(0, 10 ** 6))
def test_table_associative_curved(seed):
    tab = cached_table("curved_toy", 4)
    rng = random.Random(seed)
    f, g, h = (random_poly(rng, 2, 3) for _ in range(3))
    assert tab.apply(tab.apply(f, g), h) == tab.apply(f, tab.apply(g, h))


@pytest.mark.parametrize("name", ["torus_h_omega1", "torus_h2_omega1", "moyal_r4"])
def test_gauge_matches_exponential_formula(name):
    # constant Omega(hbar): the Fedosov table is the Moyal formula for Omega^{-1}
    spec = builtin(name)
    assert cached_table(name, 4) == moyal_table(pi_expansion(spec, 4), 4, 4)


def test_table_agrees_with_direct_star():
    S = cached_setup("curved_toy")
    tab = cached_table("curved_toy", 4)
    rng = random.Random(3)
    for _ in range(5):
        f, g = random_poly(rng, 2, 5), random_poly(rng, 2, 5)
        assert tab.apply(f, g) == star(f, g, S).truncate(4)


def test_table_json_roundtrip():
    tab = cached_table("curved_toy", 3)
    assert StarProductTable.from_json(tab.to_json()) == tab


def test_low_order_cap_is_detected():
    with pytest.raises(TableReconstructionError):
        extract_table(cached_setup("curved_toy"), 3, order_cap=1)


def test_order_needs_cap():
    with pytest.raises(ValueError):
        extract_table(cached_setup("moyal_r2", 6), 4)


def test_prescription_validation():
    P = PoissonMatrix.from_omega([[0, 1], [-1, 0]])
    with pytest.raises(ValueError):
        CurvaturePrescription(P, [(0, [[0, 1], [-1, 0]])])
    from starcoh.forms import ScalarFormSeries
    # x^1 dx^2 ^ dx^3 in four dimensions has d = dx^1 ^ dx^2 ^ dx^3
    P4 = PoissonMatrix.from_omega(builtin("moyal_r4").omega)
    not_closed = ScalarFormSeries(4, {(0, (1, 2), (1, 0, 0, 0)): 1})
    with pytest.raises(ValueError, match="closed"):
        CurvaturePrescription(P4, [(1, not_closed)])
