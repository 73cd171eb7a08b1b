"""The twelve acceptance criteria, each at its stated scope.

Every test records a one-line PASS/FAIL verdict; the lines are printed in
the terminal summary (and by ``python tests/test_acceptance.py``).
"""

import contextlib
import os
import random
import subprocess
import sys

import pytest
import sympy as sp

import conftest
from conftest import as_poly, cached_setup, cached_table, moyal_oracle, series_to_sympy, to_sympy_scalar
from starcoh.cli import main
from starcoh.examples import BUILTIN_NAMES, builtin
from starcoh.fedosov import flat_section, random_poly, solve_gamma, star
from starcoh.hochschild import (
    Cochain,
    coboundary,
    cochain_residual,
    derivative_cocycle,
    liouville_check,
    trivialize_on_flat,
)
from starcoh.cohomology import liouville_obstruction
from starcoh.forms import ScalarFormSeries
from starcoh.pipeline import verify_commutator_lemmas, verify_DK0
from starcoh.poly import BasePoly, PolySeries, exp_factorial, monomials_up_to
from starcoh.scalar import I, Scalar
from starcoh.weyl import Truncation, WeylElement, WeylForm, center_project

TITLES = {
    1: "Moyal associativity (50 triples, deg<=3, through hbar^4)",
    2: "flat reduction: gamma = 0 and star = Moyal oracle (deg<=4 pairs)",
    3: "gamma closed form on torus_h_omega1, curvature residual 0 (cap 8)",
    4: "flat sections D(u)=0, sigma(u)=a (deg<=4, every builtin) + Taylor formula",
    5: "b(b(.)) = 0 and b(c) = 0 through hbar^3 (deg<=2 triples, every builtin)",
    6: "D K0 = i(Omega - hbar dOmega/dhbar)",
    7: "commutator lemmas on 20 random forms per builtin",
    8: "quantum Liouville operators through hbar^4 (deg<=3), no obstruction",
    9: "torus_h2_omega1 obstructed on dtheta1^dtheta2, verify exits nonzero",
    10: "trivializer on moyal_r2: b(H) = c through hbar^3 (deg<=2 pairs)",
    11: "emitted D K0 = -i hbar^2 d/dhbar(cl) for every builtin",
    12: "verify --suite all is byte-identical across runs",
}


@contextlib.contextmanager
def criterion(num):
    try:
        yield
    except BaseException:
        conftest.ACCEPTANCE_LINES[num] = f"[FAIL] #{num:>2} {TITLES[num]}"
        raise
    conftest.ACCEPTANCE_LINES[num] = f"[PASS] #{num:>2} {TITLES[num]}"


def test_01_moyal_associativity():
    with criterion(1):
        for name in ("moyal_r2", "moyal_r4"):
            tab = cached_table(name, 4)
            rng = random.Random(2024)
            for _ in range(50):
                f, g, h = (random_poly(rng, tab.dim, 3, terms=4) for _ in range(3))
                assert tab.apply(tab.apply(f, g), h) == tab.apply(f, tab.apply(g, h)), name


def test_02_flat_reduction():
    with criterion(2):
        h = sp.Symbol("h")
        for name in ("moyal_r2", "moyal_r4"):
            S = cached_setup(name)
            assert not solve_gamma(S.conn, S.presc, S.trunc).terms
            syms = sp.symbols(f"x1:{S.dim + 1}")
            pi = [[to_sympy_scalar(v) for v in row] for row in S.P.pi]
            mons = monomials_up_to(S.dim, 4)
            for a in mons:
                for b in mons:
                    f, g = BasePoly.monomial(a), BasePoly.monomial(b)
                    got = as_poly(series_to_sympy(star(f, g, S), syms, h), syms, h)
                    want = moyal_oracle(series_to_sympy(f, syms, h), series_to_sympy(g, syms, h),
                                        syms, pi, h, 4)
                    assert got == want, (name, a, b)


def test_03_gamma_closed_form():
    with criterion(3):
        spec = builtin("torus_h_omega1")
        S = spec.setup(Truncation(8))
        w1 = spec.perturbations[0][1]
        z = (0,) * 4
        terms = {}
        for i in range(4):
            for j in range(4):
                if w1[i][j]:
                    y = tuple(1 if t == i else 0 for t in range(4))
                    terms[((j,), 1, y, z)] = Scalar(w1[i][j]) / 2
        assert S.gamma == WeylForm(4, S.trunc, 1, terms)
        assert not S.residual()


def test_04_flat_sections():
    with criterion(4):
        for name in BUILTIN_NAMES:
            S = cached_setup(name)
            cap = S.trunc.degree_cap
            for e in monomials_up_to(S.dim, 4):
                a = BasePoly.monomial(e)
                u = flat_section(a, S)
                assert not S.D(u).truncate(cap - 1), (name, e)
                assert center_project(u) == PolySeries.from_poly(a), (name, e)
                if name.startswith("moyal"):
                    taylor = {}
                    for alpha in monomials_up_to(S.dim, sum(e)):
                        for x, c in a.diff_multi(alpha).terms.items():
                            taylor[(0, alpha, x)] = c / exp_factorial(alpha)
                    assert u == WeylElement(S.dim, S.trunc, taylor), (name, e)


def test_05_hochschild():
    with criterion(5):
        for name in BUILTIN_NAMES:
            # the derivative cocycle is exact through hbar^{N-1}; b costs one more order
            tab = cached_table(name, 5, 10)
            c = derivative_cocycle(tab)
            assert cochain_residual(coboundary(c, tab), 2, through=3)["ok"], name
            rng = random.Random(7)
            for arity in (0, 1):
                terms = {}
                for _ in range(3):
                    alphas = tuple(rng.choice(monomials_up_to(tab.dim, 2)) for _ in range(arity))
                    terms[(rng.randint(0, 1), alphas)] = random_poly(rng, tab.dim, 2, terms=2)
                G = Cochain(arity, tab.dim, terms)
                bb = coboundary(coboundary(G, tab), tab)
                assert cochain_residual(bb, 2, through=3)["ok"], (name, arity)
            bbc = coboundary(coboundary(c, tab), tab)
            assert cochain_residual(bbc, 1, through=2)["ok"], name


def test_06_DK0():
    with criterion(6):
        w0 = ScalarFormSeries.from_matrix(builtin("torus_h_omega1").omega)
        w1 = ScalarFormSeries.from_matrix(builtin("torus_h_omega1").perturbations[0][1])
        expected = {
            "moyal_r2": ScalarFormSeries.from_matrix(builtin("moyal_r2").omega).scale(I),
            "torus_h_omega1": w0.scale(I),
            "torus_h2_omega1": (w0 - w1.shift(2)).scale(I),
            "curved_toy": ScalarFormSeries.from_matrix(builtin("curved_toy").omega).scale(I),
        }
        for name, want in expected.items():
            r = verify_DK0(builtin(name).setup(Truncation(10)))
            assert r["ok"], (name, r["residual_terms"])
            assert r["DK0"] == want, name


def test_07_lemmas():
    with criterion(7):
        for name in BUILTIN_NAMES:
            r = verify_commutator_lemmas(builtin(name).setup(Truncation(10)), count=20, seed=0)
            assert r["ok"], (name, r["failures"])


def test_08_liouville_positive():
    with criterion(8):
        half = Scalar(1) / 2
        cands = {
            "torus_h_omega1": Cochain.vector_field(4, {2: BasePoly.var(4, 2), 3: BasePoly.var(4, 3)}),
            "moyal_r2": Cochain.vector_field(2, {0: BasePoly.var(2, 0).scale(half),
                                                 1: BasePoly.var(2, 1).scale(half)}),
        }
        for name, X in cands.items():
            spec = builtin(name)
            rep = liouville_check(X, cached_table(name, 4), 3, 4)
            assert rep["ok"], (name, rep["residual_terms"])
            ob = liouville_obstruction(spec.prescription(), spec.decl)
            assert not ob["obstructed"]
            assert all(not c for by_k in ob["coordinates"].values() for c in by_k.values())


def test_09_liouville_negative(capsys):
    with criterion(9):
        spec = builtin("torus_h2_omega1")
        ob = liouville_obstruction(spec.prescription(), spec.decl)
        assert ob["obstructed"]
        assert ob["coordinates"]["dtheta1^dtheta2"][0] != 0
        assert main(["verify", "--example", "torus_h2_omega1", "--suite", "liouville"]) != 0
        capsys.readouterr()


def test_10_trivializer():
    with criterion(10):
        tab = cached_table("moyal_r2", 4)
        c = derivative_cocycle(tab)
        H = trivialize_on_flat(c, tab, builtin("moyal_r2").poisson())
        assert cochain_residual(coboundary(H, tab) - c, 2, through=3)["ok"]


def test_11_derivative_cocycle_matches_class():
    with criterion(11):
        for name in BUILTIN_NAMES:
            S = builtin(name).setup(Truncation(10))
            r = verify_DK0(S)
            cl = S.presc.Omega.shift(-1)
            phi = cl.hbar_derivative().shift(2).scale(-I)
            assert r["DK0"] == phi, name
            for k in sorted(set(phi.hbar_orders()) | set(r["DK0"].hbar_orders())):
                assert r["DK0"].at_order(k) == phi.at_order(k), (name, k)


def test_12_determinism():
    with criterion(12):
        cmd = [sys.executable, "-m", "starcoh", "verify", "--example", "torus_h_omega1",
               "--suite", "all", "--seed", "0"]
        procs = [subprocess.Popen(cmd, stdout=subprocess.PIPE, stderr=subprocess.PIPE,
                                  env={**os.environ, "PYTHONHASHSEED": str(seed)})
                 for seed in (1, 2)]
        outs = [p.communicate() for p in procs]
        assert all(p.returncode == 0 for p in procs), [o[1] for o in outs]
        assert outs[0][0] == outs[1][0]
        assert outs[0][0]


if __name__ == "__main__":
    code = pytest.main([__file__, "-q"])
    sys.exit(code)
