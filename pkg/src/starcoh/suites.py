"""Verification suites shared by the command line and the test-suite.

Every suite returns a JSON-ready dict with an ``ok`` flag; nothing here
depends on wall-clock time or hash order, so reports are reproducible.
"""

from __future__ import annotations

import random

from .cohomology import liouville_obstruction
from .fedosov import (
    FedosovSetup,
    StarProductTable,
    characteristic_class,
    check_quantum_exponential,
    extract_table,
    flat_section,
    random_poly,
)
from .forms import ScalarFormSeries
from .hochschild import (
    Cochain,
    TrivializationError,
    coboundary,
    cochain_residual,
    derivative_cocycle,
    fit_liouville_constant,
    liouville_check,
    search_liouville_candidate,
    trivialize_on_flat,
)
from .poly import BasePoly, PolySeries, monomials_up_to
from .scalar import Scalar
from .weyl import WeylForm, center_project
from .weylforms import delta_inv
from .pipeline import verify_commutator_lemmas, verify_DK0, verify_H_lemma

__all__ = ["SUITES", "Context", "run_suite", "run_suites", "jsonable"]

SUITES = ("fedosov", "hochschild", "dk0", "liouville", "lemmas")


def jsonable(obj):
    """Convert reports holding exact objects into plain JSON values."""
    if isinstance(obj, Scalar):
        return obj.render()
    if isinstance(obj, (ScalarFormSeries, PolySeries, BasePoly, WeylForm, StarProductTable, Cochain)):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


class Context:
    """Lazily built objects for one example at one truncation."""

    def __init__(self, spec, order: int, test_degree: int = 2, seed: int = 0):
        self.spec = spec
        self.order = order
        self.test_degree = test_degree
        self.seed = seed
        self._setup = None
        self._table = None

    @property
    def setup(self) -> FedosovSetup:
        if self._setup is None:
            self._setup = self.spec.setup()
        return self._setup

    @property
    def table(self) -> StarProductTable:
        if self._table is None:
            self._table = extract_table(self.setup, self.order, seed=self.seed)
        return self._table


def _fedosov(ctx: Context) -> dict:
    S = ctx.setup
    cap = S.trunc.degree_cap
    res = S.residual()
    gamma_ok = (not S.gamma.terms or S.gamma.min_degree() >= 3) and not delta_inv(S.gamma).terms
    flat_bad = []
    for e in monomials_up_to(S.dim, ctx.test_degree + 2):
        a = BasePoly.monomial(e)
        u = flat_section(a, S)
        if S.D(u).truncate(cap - 1) or center_project(u) != PolySeries.from_poly(a):
            flat_bad.append(list(e))
    rng = random.Random(ctx.seed)
    tab = ctx.table
    assoc_bad = 0
    for _ in range(10):
        f, g, h = (random_poly(rng, S.dim, 3) for _ in range(3))
        if tab.apply(tab.apply(f, g), h) != tab.apply(f, tab.apply(g, h)):
            assoc_bad += 1
    qexp = check_quantum_exponential(S, degree=ctx.test_degree)
    ok = not res.terms and gamma_ok and not flat_bad and not assoc_bad and qexp["ok"]
    return {
        "check": "fedosov",
        "curvature_residual_terms": res.to_json(),
        "gamma": S.gamma.to_json(),
        "gamma_normalized": gamma_ok,
        "flat_section_failures": flat_bad,
        "associativity_failures": assoc_bad,
        "associativity_through": tab.order,
        "quantum_exponential": qexp,
        "ok": ok,
    }


def _hochschild(ctx: Context) -> dict:
    tab = ctx.table
    deg = ctx.test_degree
    c = derivative_cocycle(tab)
    bc = coboundary(c, tab)
    r_bc = cochain_residual(bc, deg, check="b(derivative cocycle)")
    rng = random.Random(ctx.seed + 1)
    dim = tab.dim
    bb_reports = []
    for _ in range(2):
        terms = {}
        for _ in range(2):
            a = rng.choice(monomials_up_to(dim, 2))
            terms[(rng.randint(0, 1), (a,))] = random_poly(rng, dim, 1, terms=2)
        G = Cochain(1, dim, terms)
        bb_reports.append(cochain_residual(coboundary(coboundary(G, tab), tab), deg, check="b(b(G))"))
    triv = {"check": "trivializer"}
    try:
        order = min(tab.order, 4)
        small = StarProductTable(dim, order, tab.C[:order + 1])
        cc = derivative_cocycle(small)
        H = trivialize_on_flat(cc, small, ctx.setup.P)
        diff = coboundary(H, small) - cc
        triv.update(cochain_residual(diff, deg, check="b(H) - c"))
        triv["H"] = H.to_json()
    except TrivializationError as exc:
        triv.update({"ok": False, "error": str(exc)})
    ok = r_bc["ok"] and all(r["ok"] for r in bb_reports) and triv["ok"]
    return {"check": "hochschild", "cocycle": r_bc, "b_squared": bb_reports,
            "trivializer": triv, "ok": ok}


def _dk0(ctx: Context) -> dict:
    r = verify_DK0(ctx.setup)
    lemma = verify_H_lemma(ctx.setup, degree=ctx.test_degree)
    out = {
        "check": "dk0",
        "residual_terms": r["residual_terms"],
        "DK0": r["DK0"],
        "phi_of_c": r["expected"],
        "class": characteristic_class(ctx.setup),
        "matches_class": r["matches_class"],
        "H_lemma": lemma,
        "max_weyl_degree": r["max_weyl_degree"],
    }
    out["ok"] = r["ok"] and r["matches_class"] and lemma["ok"]
    return out


def _liouville(ctx: Context) -> dict:
    spec = ctx.spec
    out = {"check": "liouville"}
    ok = True
    if spec.decl is not None:
        ob = liouville_obstruction(ctx.setup, spec.decl)
        out["obstruction"] = {"derivative_of_class": ob["derivative"],
                              "coordinates": ob["coordinates"], "obstructed": ob["obstructed"]}
        ok = ok and not ob["obstructed"]
    tab = ctx.table
    N = min(tab.order, 4)
    if spec.candidate is not None:
        chk = liouville_check(spec.candidate, tab, ctx.test_degree + 1, N)
        out["candidate"] = {"operator": spec.candidate.to_json(), "report": chk}
        if chk["ok"]:
            lam = fit_liouville_constant(spec.candidate, tab, ctx.test_degree)
            out["candidate"]["bX_over_c"] = lam
        ok = ok and chk["ok"]
    if not ok:
        # the hbar^2 torus obstruction only shows up once hbar^3 is checked
        top = min(tab.order, 3)
        small = StarProductTable(tab.dim, top, tab.C[:top + 1])
        X, info = search_liouville_candidate(small, testdeg=2, max_hbar=1, max_order=2,
                                             coeff_degree=1, periodic=spec.periodic, through=top)
        out["search"] = info
        if X is not None:
            out["search"]["found"] = X.to_json()
    out["ok"] = ok
    return out


def _lemmas(ctx: Context) -> dict:
    return verify_commutator_lemmas(ctx.setup, count=20, seed=ctx.seed)


_RUNNERS = {"fedosov": _fedosov, "hochschild": _hochschild, "dk0": _dk0,
            "liouville": _liouville, "lemmas": _lemmas}


def run_suite(ctx: Context, name: str) -> dict:
    if name not in _RUNNERS:
        raise KeyError(f"unknown suite {name!r}")
    return _RUNNERS[name](ctx)


def run_suites(ctx: Context, names) -> dict:
    reports = {name: run_suite(ctx, name) for name in names}
    return {"example": ctx.spec.name, "suites": reports,
            "ok": all(r["ok"] for r in reports.values())}
