"""Fedosov's recursions on a flat Darboux chart: the connection 1-form gamma
for a prescribed Weyl curvature, flat sections, the induced star-product and
its bidifferential table."""

from __future__ import annotations

import random
from math import factorial

from .forms import ScalarFormSeries, d_exterior, euler_homotopy
from .poly import BasePoly, PolySeries, _accumulate, exp_factorial, glex_key, monomials_up_to
from .scalar import ONE, ZERO, Scalar, as_scalar, parse_scalar
from .weyl import (
    PoissonMatrix,
    Truncation,
    WeylElement,
    WeylForm,
    center_product,
    center_project,
    graded_product,
    ihbar_product,
    x_multiply,
)
from .weylforms import ConnectionData, covariant_partial, delta, delta_inv, fedosov_D

__all__ = [
    "CurvaturePrescription",
    "FedosovSetup",
    "StarProductTable",
    "TableReconstructionError",
    "solve_gamma",
    "curvature_residual",
    "flat_section",
    "star",
    "extract_table",
    "moyal_table",
    "check_quantum_exponential",
    "characteristic_class",
]


class TableReconstructionError(ValueError):
    """The interpolated table does not reproduce the star-product."""


class CurvaturePrescription:
    """``Omega = omega_0 + sum_k hbar^k omega_k`` with each ``omega_k`` closed."""

    def __init__(self, P: PoissonMatrix, perturbations=()):
        P.require_symplectic()
        self.P = P
        self.dim = P.dim
        omega0 = ScalarFormSeries.from_matrix(P.omega)
        total = omega0
        perts = []
        for k, w in perturbations:
            if k < 1:
                raise ValueError("perturbation orders must be >= 1")
            if not isinstance(w, ScalarFormSeries):
                w = ScalarFormSeries.from_matrix(w)
            if w.dim != self.dim:
                raise ValueError("perturbation dimension mismatch")
            if w.form_degrees() - {2}:
                raise ValueError("perturbations must be 2-forms")
            if set(w.hbar_orders()) - {0}:
                raise ValueError("perturbation forms are given at hbar^0 and placed by k")
            if d_exterior(w):
                raise ValueError(f"perturbation at hbar^{k} is not closed")
            perts.append((k, w))
            total = total + w.shift(k)
        self.omega0 = omega0
        self.perturbations = tuple(perts)
        self.Omega = total

    def Omega_dot(self) -> ScalarFormSeries:
        return self.Omega.hbar_derivative()


def _embed(w: ScalarFormSeries, trunc: Truncation, q: int) -> WeylForm:
    return WeylForm.from_scalar_form(w, trunc, q)


def solve_gamma(conn: ConnectionData, presc: CurvaturePrescription, trunc: Truncation) -> WeylForm:
    """Fixed point of ``gamma = delta^{-1}(Omega - omega + R + partial gamma + (i/hbar) gamma^2)``."""
    if conn.P != presc.P:
        raise ValueError("connection and prescription use different symplectic forms")
    P = conn.P
    source = _embed(presc.Omega - presc.omega0, trunc, 2) + conn.curvature_R(trunc)
    gamma = WeylForm.zero(conn.dim, trunc, 1)
    for _ in range(trunc.degree_cap + 2):
        rhs = source + covariant_partial(gamma, conn)
        if gamma.terms:
            rhs = rhs + ihbar_product(gamma, gamma, P)
        new = delta_inv(rhs)
        if new == gamma:
            break
        gamma = new
    else:
        raise RuntimeError("gamma recursion did not stabilize within the degree cap")
    if gamma.terms and gamma.min_degree() < 3:
        raise RuntimeError("gamma has a term of Weyl degree < 3")
    return gamma


def curvature_residual(conn, presc, gamma: WeylForm) -> WeylForm:
    """``Omega - (omega - R + delta gamma - partial gamma - (i/hbar) gamma^2)``, exact below the cap."""
    trunc = gamma.trunc
    P = conn.P
    model = (_embed(presc.omega0, trunc, 2) - conn.curvature_R(trunc)
             + delta(gamma) - covariant_partial(gamma, conn))
    if gamma.terms:
        model = model - ihbar_product(gamma, gamma, P)
    return (_embed(presc.Omega, trunc, 2) - model).truncate(trunc.degree_cap - 1)


class FedosovSetup:
    """A solved Fedosov connection ``D = -delta + partial + (i/hbar)[gamma, .]``."""

    def __init__(self, conn: ConnectionData, presc: CurvaturePrescription, trunc: Truncation,
                 gamma: WeylForm | None = None):
        self.conn = conn
        self.presc = presc
        self.trunc = trunc
        self.P = conn.P
        self.dim = conn.dim
        if gamma is None:
            gamma = solve_gamma(conn, presc, trunc)
        self.gamma = gamma
        self._flat: dict = {}

    def with_cap(self, cap: int) -> "FedosovSetup":
        """The same connection at a lower cap (gamma's slices do not depend on the cap)."""
        if cap > self.trunc.degree_cap:
            return FedosovSetup(self.conn, self.presc, self.trunc.with_cap(cap))
        trunc = self.trunc.with_cap(cap)
        return FedosovSetup(self.conn, self.presc, trunc, self.gamma.retruncate(trunc))

    def D(self, a: WeylForm) -> WeylForm:
        return fedosov_D(a, self.conn, self.gamma)

    def residual(self) -> WeylForm:
        return curvature_residual(self.conn, self.presc, self.gamma)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "degree_cap": self.trunc.degree_cap,
            "gamma": self.gamma.to_json(),
        }


def _as_series(a, dim: int) -> PolySeries:
    if isinstance(a, PolySeries):
        return a
    if isinstance(a, BasePoly):
        return PolySeries.from_poly(a)
    return PolySeries.from_poly(BasePoly.const(dim, a))


def flat_section(a, setup: FedosovSetup) -> WeylElement:
    """The unique ``D``-flat section with ``sigma = a``:
    ``u = a + delta^{-1}(partial u + (i/hbar)[gamma, u])``."""
    from .weyl import ihbar_commutator
    a = _as_series(a, setup.dim)
    key = tuple(sorted(a.terms.items()))
    hit = setup._flat.get(key)
    if hit is not None:
        return hit
    base = WeylElement.central(a, setup.trunc)
    u = base
    gamma = setup.gamma
    for _ in range(setup.trunc.degree_cap + 2):
        rhs = covariant_partial(u, setup.conn)
        if gamma.terms:
            rhs = rhs + ihbar_commutator(gamma, u, setup.P)
        new = base + delta_inv(rhs)
        if new == u:
            break
        u = new
    else:
        raise RuntimeError("flat-section recursion did not stabilize")
    setup._flat[key] = u
    return u


def star(a, b, setup: FedosovSetup) -> PolySeries:
    """``a * b = sigma(flat(a) * flat(b))``, through ``hbar^{cap // 2}``."""
    return center_product(flat_section(a, setup), flat_section(b, setup), setup.P)


class StarProductTable:
    """``f * g = sum_k hbar^k C_k(f, g)``, ``C_k = sum g_{ab}(x) d^a (x) d^b``.

    ``C[k]`` maps ``(a, b)`` multi-index pairs to ``BasePoly`` coefficients.
    """

    def __init__(self, dim: int, order: int, C: list):
        if len(C) != order + 1:
            raise ValueError("table needs C[0..order]")
        self.dim = dim
        self.order = order
        self.C = [{key: p for key, p in ck.items() if p} for ck in C]

    def __eq__(self, other):
        if not isinstance(other, StarProductTable):
            return NotImplemented
        return self.dim == other.dim and self.order == other.order and self.C == other.C

    def max_derivative_order(self) -> int:
        return max((max(sum(a), sum(b)) for ck in self.C for a, b in ck), default=0)

    def apply(self, f, g) -> PolySeries:
        """Evaluate ``f * g`` through ``hbar^order`` (f, g polynomials or series)."""
        f = _as_series(f, self.dim)
        g = _as_series(g, self.dim)
        out: dict = {}
        fcache: dict = {}
        gcache: dict = {}
        for k, ck in enumerate(self.C):
            for (a, b), coef in ck.items():
                df = fcache.get(a)
                if df is None:
                    df = fcache[a] = f.diff_multi(a)
                if not df:
                    continue
                dg = gcache.get(b)
                if dg is None:
                    dg = gcache[b] = g.diff_multi(b)
                if not dg:
                    continue
                prod = df * dg
                for (kk, x), c in prod.terms.items():
                    if kk + k > self.order:
                        continue
                    for px, pc in coef.terms.items():
                        _accumulate(out, (kk + k, tuple([s + t for s, t in zip(x, px)])), c * pc)
        return PolySeries._wrap(self.dim, out)

    def to_json(self) -> dict:
        out = {}
        for k, ck in enumerate(self.C):
            out[str(k)] = [
                {"left": list(a), "right": list(b), "coeff": p.to_json()}
                for (a, b), p in sorted(ck.items(), key=lambda t: (glex_key(t[0][0]), glex_key(t[0][1])))
            ]
        return {"dim": self.dim, "order": self.order, "C": out}

    @classmethod
    def from_json(cls, data) -> "StarProductTable":
        dim, order = data["dim"], data["order"]
        C = []
        for k in range(order + 1):
            C.append({(tuple(t["left"]), tuple(t["right"])): BasePoly.from_json(dim, t["coeff"])
                      for t in data["C"].get(str(k), [])})
        return cls(dim, order, C)


def _jet_sections(setup: FedosovSetup, order_cap: int) -> dict:
    """``Q_b = flat((z - x)^b / b!)`` evaluated on the diagonal, for ``|b| <= order_cap``."""
    dim = setup.dim
    mons = monomials_up_to(dim, order_cap)
    flats = {mu: flat_section(BasePoly.monomial(mu), setup) for mu in mons}
    out = {}
    for beta in mons:
        acc = None
        for mu in mons:
            if any(m > b for m, b in zip(mu, beta)):
                continue
            rest = tuple(b - m for b, m in zip(beta, mu))
            c = Scalar(1) / (exp_factorial(mu) * exp_factorial(rest))
            if sum(rest) & 1:
                c = -c
            term = x_multiply(flats[mu], BasePoly.monomial(rest, c))
            acc = term if acc is None else acc + term
        out[beta] = acc
    return out


def extract_table(setup: FedosovSetup, N: int, order_cap: int | None = None,
                  seed: int = 0, probes: int = 10) -> StarProductTable:
    """Reconstruct ``C_0..C_N`` by jet interpolation and check it against ``star``.

    ``g_{ab}(x) = sigma(Q_a * Q_b)``; only pairs with ``|a| + |b| <= 2N`` can
    reach ``hbar^{<=N}``.
    """
    if 2 * N > setup.trunc.degree_cap:
        raise ValueError(f"order {N} needs degree_cap >= {2 * N}")
    if order_cap is None:
        order_cap = max(N, 1)
    work = setup.with_cap(2 * N)
    jets = _jet_sections(work, order_cap)
    C = [dict() for _ in range(N + 1)]
    P = work.P
    for a, qa in jets.items():
        for b, qb in jets.items():
            if sum(a) + sum(b) > 2 * N:
                continue
            g = center_product(qa, qb, P)
            for (k, x), c in g.terms.items():
                if k <= N:
                    C[k].setdefault((a, b), {})[x] = c
    table = StarProductTable(setup.dim, N,
                             [{key: BasePoly._wrap(setup.dim, t) for key, t in ck.items()} for ck in C])
    _probe_table(table, work, order_cap, seed, probes)
    return table


def _probe_table(table: StarProductTable, setup: FedosovSetup, order_cap: int,
                 seed: int, probes: int) -> None:
    dim = setup.dim
    N = table.order
    rng = random.Random(seed)
    pairs = [(BasePoly.monomial(a), BasePoly.monomial(b))
             for a in monomials_up_to(dim, order_cap + 1, order_cap + 1)
             for b in monomials_up_to(dim, order_cap + 1, order_cap + 1)]
    rng.shuffle(pairs)
    pairs = pairs[:probes]
    for _ in range(probes):
        pairs.append((random_poly(rng, dim, order_cap + 1), random_poly(rng, dim, order_cap + 1)))
    for f, g in pairs:
        direct = star(f, g, setup).truncate(N)
        if table.apply(f, g) != direct:
            raise TableReconstructionError(
                f"table of derivative order {order_cap} does not reproduce the star-product; "
                "raise order_cap"
            )


def random_poly(rng: random.Random, dim: int, degree: int, terms: int = 3,
                gaussian: bool = True) -> BasePoly:
    """A small random polynomial with Gaussian-rational coefficients."""
    mons = monomials_up_to(dim, degree)
    out: dict = {}
    for _ in range(terms):
        e = rng.choice(mons)
        re = Scalar(rng.randint(-4, 4)) / rng.randint(1, 3)
        im = rng.randint(-2, 2) if gaussian else 0
        _accumulate(out, e, re + Scalar(0, im))
    return BasePoly._wrap(dim, out)


def moyal_table(pis: dict, dim: int, N: int) -> StarProductTable:
    """Exponential (Moyal) formula for an hbar-dependent constant bivector.

    ``pis`` maps hbar-order ``s`` to a matrix; the product is
    ``exp((-i hbar / 2) sum_s hbar^s pi_s^{ij} d_i (x) d_j)``.
    """
    base: dict = {}
    for s, mat in pis.items():
        for i in range(dim):
            for j in range(dim):
                c = as_scalar(mat[i][j])
                if c:
                    a = tuple(1 if t == i else 0 for t in range(dim))
                    b = tuple(1 if t == j else 0 for t in range(dim))
                    _accumulate(base, (1 + s, a, b), c * Scalar(0, -1) / 2)
    zero = (0,) * dim
    power = {(0, zero, zero): ONE}
    total = dict(power)
    for m in range(1, N + 1):
        nxt: dict = {}
        for (k1, a1, b1), c1 in power.items():
            for (k2, a2, b2), c2 in base.items():
                if k1 + k2 > N:
                    continue
                key = (k1 + k2, tuple(p + q for p, q in zip(a1, a2)),
                       tuple(p + q for p, q in zip(b1, b2)))
                _accumulate(nxt, key, c1 * c2 / m)
        power = nxt
        for key, c in power.items():
            _accumulate(total, key, c)
    C = [dict() for _ in range(N + 1)]
    for (k, a, b), c in total.items():
        # the operator acts on d^a f d^b g; the exponential already carries 1/m!
        C[k][(a, b)] = BasePoly.const(dim, c)
    return StarProductTable(dim, N, C)


def check_quantum_exponential(setup: FedosovSetup, degree: int = 2) -> dict:
    """Residual counts for the three quantum-exponential axioms on monomials."""
    dim = setup.dim
    cap = setup.trunc.degree_cap
    mons = monomials_up_to(dim, degree)
    closed = projection = linear = 0
    for e in mons:
        a = BasePoly.monomial(e)
        u = flat_section(a, setup)
        if center_project(u) != PolySeries.from_poly(a):
            projection += 1
        da = d_exterior(ScalarFormSeries._wrap(dim, {(0, (), e): ONE}))
        lin = WeylElement.central(a, setup.trunc) + delta_inv(WeylForm.from_scalar_form(da, setup.trunc, 1))
        if (u - lin).truncate(1):
            linear += 1
    for i, e1 in enumerate(mons):
        for e2 in mons[i:]:
            prod = graded_product(flat_section(BasePoly.monomial(e1), setup),
                                  flat_section(BasePoly.monomial(e2), setup), setup.P)
            if setup.D(prod).truncate(cap - 1):
                closed += 1
    return {"closed_under_product": closed, "projection": projection, "linearization": linear,
            "ok": closed == projection == linear == 0}


def characteristic_class(setup_or_presc) -> ScalarFormSeries:
    """``cl = Omega / hbar``."""
    presc = getattr(setup_or_presc, "presc", setup_or_presc)
    return presc.Omega.shift(-1)
