"""The derivative-cocycle pipeline on a Fedosov setup: the map H on flat
sections, the 1-form K0 with DK0 = i(Omega - hbar dOmega/dhbar), and the
commutator identities of D with d/dhbar and E."""

from __future__ import annotations

import random

from .forms import ScalarFormSeries
from .poly import BasePoly, PolySeries, monomials_up_to
from .scalar import I, Scalar
from .weyl import (
    HALF_I,
    Truncation,
    WeylElement,
    WeylForm,
    c1_bilinear,
    center_project,
    euler_E,
    graded_commutator,
    hbar_derivative,
    hbar_euler,
    rho,
)
from .weylforms import covariant_partial, delta, delta_inv, fedosov_D, omega_y_dx
from .fedosov import FedosovSetup, characteristic_class, flat_section, solve_gamma

__all__ = [
    "build_H",
    "compute_K0",
    "verify_DK0",
    "verify_H_lemma",
    "verify_commutator_lemmas",
    "random_weyl_form",
    "phi_of_derivative_cocycle",
]


def build_H(u: WeylElement, setup: FedosovSetup) -> WeylElement:
    """The section ``v`` with ``D v = D rho(u)`` and ``v|_{y=0} = 0``:
    ``v = delta^{-1}(partial v + (i/hbar)[gamma, v] - D rho(u))``."""
    from .weyl import ihbar_commutator
    target = setup.D(rho(u))
    v = WeylElement.zero(setup.dim, setup.trunc)
    for _ in range(setup.trunc.degree_cap + 2):
        rhs = covariant_partial(v, setup.conn) - target
        if setup.gamma.terms:
            rhs = rhs + ihbar_commutator(setup.gamma, v, setup.P)
        new = delta_inv(rhs)
        if new == v:
            break
        v = new
    else:
        raise RuntimeError("H recursion did not stabilize")
    return v


def verify_H_lemma(setup: FedosovSetup, degree: int = 2) -> dict:
    """``H(flat(a)) = rho(flat(a))`` for hbar-free monomials ``a``, below the cap."""
    cap = setup.trunc.degree_cap
    bad = []
    for e in monomials_up_to(setup.dim, degree):
        u = flat_section(BasePoly.monomial(e), setup)
        v = build_H(u, setup)
        if (v - rho(u)).truncate(cap - 1):
            bad.append(list(e))
    return {"check": "H_lemma", "max_weyl_degree": cap - 1, "failures": bad, "ok": not bad}


def compute_K0(setup: FedosovSetup) -> WeylForm:
    """``K0 = -(E gamma - i hbar dgamma/dhbar + i gamma + (i/2) omega_ij y^i dx^j)``."""
    g = setup.gamma
    inner = euler_E(g) - hbar_euler(g).scale(I) + g.scale(I) + omega_y_dx(setup.P, setup.trunc, HALF_I)
    return -inner


def phi_of_derivative_cocycle(setup: FedosovSetup) -> ScalarFormSeries:
    """``-i hbar^2 d/dhbar(cl)`` computed from the characteristic class."""
    cl = characteristic_class(setup)
    return cl.hbar_derivative().shift(2).scale(-I)


def _weyl_truncate(w: ScalarFormSeries, cap: int) -> ScalarFormSeries:
    return ScalarFormSeries._wrap(w.dim, {key: c for key, c in w.terms.items() if 2 * key[0] <= cap})


def verify_DK0(setup: FedosovSetup) -> dict:
    """``D K0 - i(Omega - hbar dOmega/dhbar)``, exact below the cap.

    Returns the residual, the scalar 2-form ``D K0`` and the expected
    ``-i hbar^2 d/dhbar(cl)``, both cut at the same Weyl degree.
    """
    cap = setup.trunc.degree_cap - 1
    K0 = compute_K0(setup)
    DK0 = setup.D(K0).truncate(cap)
    Om = setup.presc.Omega
    target = (Om - Om.hbar_derivative().shift(1)).scale(I)
    target_w = WeylForm.from_scalar_form(target, setup.trunc, 2).truncate(cap)
    resid = DK0 - target_w
    emitted = DK0.scalar_part() if DK0.is_scalar() else None
    expected = _weyl_truncate(phi_of_derivative_cocycle(setup), cap)
    return {
        "check": "dk0",
        "max_weyl_degree": cap,
        "residual_terms": resid.to_json(),
        "ok": not resid.terms,
        "DK0": emitted,
        "expected": expected,
        "matches_class": emitted is not None and emitted == expected,
    }


def random_weyl_form(rng: random.Random, dim: int, trunc: Truncation, q: int,
                     max_degree: int = 3, terms: int = 4) -> WeylForm:
    """A small random Weyl form with Weyl degree at most ``max_degree``."""
    from itertools import combinations
    dxs = list(combinations(range(dim), q))
    ys = monomials_up_to(dim, max_degree)
    xs = monomials_up_to(dim, 1)
    out = {}
    for _ in range(terms):
        y = rng.choice(ys)
        k = rng.randint(0, max(0, (max_degree - sum(y)) // 2))
        c = Scalar(rng.randint(-3, 3), rng.randint(-2, 2))
        if c:
            out[(rng.choice(dxs), k, y, rng.choice(xs))] = c
    return WeylForm(dim, trunc, q, out)


def _gsign(a: WeylForm) -> int:
    return -1 if a.q & 1 else 1


def verify_commutator_lemmas(setup: FedosovSetup, count: int = 20, seed: int = 0,
                             max_degree: int = 3) -> dict:
    """Check ``[partial, E] = 0``, ``[delta, E] = -(i/2) delta`` and the
    ``[D, d/dhbar]``, ``[D, E]`` identities on random Weyl forms.

    The last two involve ``gamma / hbar^2``; products are formed with enough
    degree headroom and compared through ``cap - 4``.
    """
    rng = random.Random(seed)
    base = setup.trunc
    work = Truncation(base.degree_cap, min(base.laurent_floor, -3))
    gamma = setup.gamma.retruncate(work)
    conn, P = setup.conn, setup.P
    cmp_deg = base.degree_cap - 4
    wide = Truncation(base.degree_cap + 4, work.laurent_floor)
    # gamma itself must be known through the wide cap, not just padded
    gamma_wide = solve_gamma(conn, setup.presc, wide)
    # (gamma / hbar)' as a wide form: degree drops by 4, so it is complete below cap
    g_over_h_dot = hbar_derivative(_shift_down(gamma_wide, 1))
    E_gamma_wide = euler_E(gamma_wide)

    def D(a):
        return fedosov_D(a, conn, gamma)

    def ih(w):
        # multiply by i/hbar, then move into the working truncation
        return WeylForm._make(w.dim, work, w.q,
                              {(dx, k - 1, y, x): c * I for (dx, k, y, x), c in w.terms.items()
                               if 2 * (k - 1) + sum(y) <= work.degree_cap})

    def cut(w):
        return w.retruncate(work).truncate(cmp_deg)

    counts = {"partial_E": 0, "delta_E": 0, "D_hbar": 0, "D_E": 0}
    for n in range(count):
        q = n % 3
        a = random_weyl_form(rng, setup.dim, work, q, max_degree=max_degree)
        sgn = _gsign(a)
        r1 = covariant_partial(euler_E(a), conn) - euler_E(covariant_partial(a, conn))
        if cut(r1):
            counts["partial_E"] += 1
        r2 = delta(euler_E(a)) - euler_E(delta(a)) + delta(a).scale(HALF_I)
        if cut(r2):
            counts["delta_E"] += 1
        aw = a.retruncate(wide)
        c1 = c1_bilinear(gamma_wide, aw, P)
        c1r = c1_bilinear(aw, gamma_wide, P)
        cc = c1 - (c1r if sgn > 0 else -c1r)
        lhs3 = D(hbar_derivative(a)) - hbar_derivative(D(a))
        rhs3 = (-graded_commutator(g_over_h_dot, aw, P).scale(I)).retruncate(work) - ih(cc)
        if cut(lhs3 - rhs3):
            counts["D_hbar"] += 1
        lhs4 = D(euler_E(a)) - euler_E(D(a))
        rhs4 = (delta(a).scale(HALF_I) - ih(graded_commutator(E_gamma_wide, aw, P, cap=wide.degree_cap + 2))
                + cc.retruncate(work))
        if cut(lhs4 - rhs4):
            counts["D_E"] += 1
    return {"check": "lemmas", "samples": count, "max_weyl_degree": cmp_deg,
            "failures": counts, "ok": not any(counts.values())}


def _shift_down(w: WeylForm, s: int) -> WeylForm:
    """Divide by ``hbar^s`` inside ``w``'s own truncation (the floor must allow it)."""
    return WeylForm._make(w.dim, w.trunc, w.q,
                          {(dx, k - s, y, x): c for (dx, k, y, x), c in w.terms.items()})
