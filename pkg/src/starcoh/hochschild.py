"""Hochschild cochains for a star-product given by its table, the coboundary
``b = (i/hbar) b~``, the derivative cocycle, quantum Liouville checks and the
order-by-order trivializer on a flat chart."""

from __future__ import annotations

from functools import lru_cache
from itertools import product as _cartesian
from math import comb, factorial

from .forms import NotClosedError, ScalarFormSeries, euler_homotopy
from .linalg import SparseSystem
from .poly import BasePoly, PolySeries, _accumulate, glex_key, monomials_up_to, unit_exp
from .scalar import I, ONE, ZERO, Scalar, as_scalar, parse_scalar
from .fedosov import StarProductTable

__all__ = [
    "Cochain",
    "TrivializationError",
    "apply_cochain",
    "compose",
    "coboundary",
    "derivative_cocycle",
    "liouville_check",
    "fit_liouville_constant",
    "trivialize_on_flat",
    "search_liouville_candidate",
    "cochain_residual",
]


class TrivializationError(ValueError):
    """The cocycle could not be written as a coboundary at the configured bounds."""


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Cochain:
    """``sum hbar^l g(x) d^{a_1} (x) ... (x) d^{a_k}``.

    ``terms`` maps ``(l, (a_1, ..., a_k))`` to a nonzero ``BasePoly``.
    ``precision`` is the highest hbar order known exactly (None: exact).
    """

    __slots__ = ("arity", "dim", "terms", "precision")

    def __init__(self, arity: int, dim: int, terms: dict | None = None, precision: int | None = None):
        self.arity = arity
        self.dim = dim
        self.precision = precision
        clean: dict = {}
        for (l, alphas), g in (terms or {}).items():
            alphas = tuple(tuple(a) for a in alphas)
            if len(alphas) != arity or any(len(a) != dim for a in alphas):
                raise ValueError("cochain multi-indices do not match arity/dim")
            if not isinstance(g, BasePoly):
                g = BasePoly.const(dim, g)
            if precision is not None and l > precision:
                continue
            key = (int(l), alphas)
            if key in clean:
                g = clean[key] + g
            if g:
                clean[key] = g
            else:
                clean.pop(key, None)
        self.terms = clean

    @classmethod
    def _wrap(cls, arity, dim, terms, precision=None) -> "Cochain":
        obj = object.__new__(cls)
        obj.arity, obj.dim, obj.terms, obj.precision = arity, dim, terms, precision
        return obj

    # constructors

    @classmethod
    def zero(cls, arity: int, dim: int, precision=None) -> "Cochain":
        return cls._wrap(arity, dim, {}, precision)

    @classmethod
    def identity(cls, dim: int) -> "Cochain":
        z = (0,) * dim
        return cls._wrap(1, dim, {(0, (z,)): BasePoly.const(dim, 1)})

    @classmethod
    def multiplication(cls, dim: int) -> "Cochain":
        z = (0,) * dim
        return cls._wrap(2, dim, {(0, (z, z)): BasePoly.const(dim, 1)})

    @classmethod
    def constant(cls, a) -> "Cochain":
        """A 0-cochain (an element of the algebra)."""
        if isinstance(a, BasePoly):
            a = PolySeries.from_poly(a)
        terms: dict = {}
        for (k, x), c in a.terms.items():
            terms.setdefault((k, ()), {})[x] = c
        return cls._wrap(0, a.dim, {key: BasePoly._wrap(a.dim, t) for key, t in terms.items()})

    @classmethod
    def vector_field(cls, dim: int, comps: dict, hbar: int = 0) -> "Cochain":
        """``sum_i comps[i] d/dx^i`` at ``hbar^hbar``."""
        terms = {}
        for i, p in comps.items():
            if not isinstance(p, BasePoly):
                p = BasePoly.const(dim, p)
            if p:
                terms[(hbar, (unit_exp(dim, i),))] = p
        return cls._wrap(1, dim, terms)

    @classmethod
    def from_table(cls, table: StarProductTable) -> "Cochain":
        terms = {}
        for k, ck in enumerate(table.C):
            for (a, b), g in ck.items():
                terms[(k, (a, b))] = g
        return cls._wrap(2, table.dim, terms, table.order)

    # structure

    def _same(self, other: "Cochain") -> None:
        if not isinstance(other, Cochain):
            raise TypeError("expected a Cochain")
        if other.arity != self.arity or other.dim != self.dim:
            raise ValueError("cochain arity/dim mismatch")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.arity, self.dim, self.terms) == (other.arity, other.dim, other.terms)

    def _combine(self, other: "Cochain", sign: int) -> "Cochain":
        self._same(other)
        prec = _min_prec(self.precision, other.precision)
        out = {key: g for key, g in self.terms.items() if prec is None or key[0] <= prec}
        for key, g in other.terms.items():
            if prec is not None and key[0] > prec:
                continue
            new = out[key] + g if sign > 0 and key in out else (
                out[key] - g if key in out else (g if sign > 0 else -g))
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return Cochain._wrap(self.arity, self.dim, out, prec)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Cochain":
        c = as_scalar(c)
        if not c:
            return Cochain._wrap(self.arity, self.dim, {}, self.precision)
        return Cochain._wrap(self.arity, self.dim,
                             {key: g.scale(c) for key, g in self.terms.items()}, self.precision)

    def shift(self, s: int) -> "Cochain":
        """Multiply by ``hbar^s``."""
        prec = None if self.precision is None else self.precision + s
        return Cochain._wrap(self.arity, self.dim,
                             {(l + s, a): g for (l, a), g in self.terms.items()}, prec)

    def truncate(self, max_order: int) -> "Cochain":
        prec = _min_prec(self.precision, max_order)
        return Cochain._wrap(self.arity, self.dim,
                             {key: g for key, g in self.terms.items() if key[0] <= max_order}, prec)

    def with_precision(self, precision) -> "Cochain":
        out = self.truncate(precision) if precision is not None else self
        return Cochain._wrap(self.arity, self.dim, dict(out.terms), precision)

    def orders(self) -> list[int]:
        return sorted({l for l, _ in self.terms})

    def lowest_order(self):
        return min((l for l, _ in self.terms), default=None)

    def coefficient(self, l: int) -> dict:
        """``{(a_1, ..., a_k): BasePoly}`` at hbar order ``l``."""
        return {a: g for (ll, a), g in self.terms.items() if ll == l}

    def max_derivative_order(self) -> int:
        return max((sum(map(sum, a)) for _, a in self.terms), default=0)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(),
                      key=lambda t: (t[0][0], tuple(glex_key(a) for a in t[0][1])))

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "dim": self.dim,
            "precision": self.precision,
            "terms": [{"hbar": l, "derivs": [list(a) for a in alphas], "coeff": g.to_json()}
                      for (l, alphas), g in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data) -> "Cochain":
        dim = data["dim"]
        return cls(data["arity"], dim,
                   {(t["hbar"], tuple(tuple(a) for a in t["derivs"])): BasePoly.from_json(dim, t["coeff"])
                    for t in data["terms"]},
                   data.get("precision"))

    def __repr__(self) -> str:
        return f"Cochain(arity={self.arity}, terms={len(self.terms)}, precision={self.precision})"


def _series(f, dim: int) -> PolySeries:
    if isinstance(f, PolySeries):
        return f
    if isinstance(f, BasePoly):
        return PolySeries.from_poly(f)
    return PolySeries.from_poly(BasePoly.const(dim, f))


def apply_cochain(c: Cochain, fs) -> PolySeries:
    """Evaluate ``c(f_1, ..., f_k)`` (truncated at ``c.precision`` when set)."""
    fs = list(fs)
    if len(fs) != c.arity:
        raise ValueError(f"cochain of arity {c.arity} applied to {len(fs)} arguments")
    fs = [_series(f, c.dim) for f in fs]
    caches = [dict() for _ in fs]
    degrees = [f.x_degree() for f in fs]
    out: dict = {}
    prec = c.precision
    for (l, alphas), g in c.terms.items():
        if any(sum(a) > d for a, d in zip(alphas, degrees)):
            continue
        prod = PolySeries._wrap(c.dim, {(l, x): v for x, v in g.terms.items()})
        for f, a, cache in zip(fs, alphas, caches):
            df = cache.get(a)
            if df is None:
                df = cache[a] = f.diff_multi(a)
            if not df:
                prod = None
                break
            prod = prod * df
        if prod is None:
            continue
        for key, v in prod.terms.items():
            if prec is None or key[0] <= prec:
                _accumulate(out, key, v)
    return PolySeries._wrap(c.dim, out)


@lru_cache(maxsize=None)
def _splits(alpha: tuple, parts: int) -> tuple:
    """All ``(gamma_0, ..., gamma_{parts-1})`` summing to ``alpha`` with multinomial weights."""
    per_coord = []
    for a in alpha:
        opts = []
        for combo in _cartesian(range(a + 1), repeat=parts):
            if sum(combo) == a:
                w = factorial(a)
                for t in combo:
                    w //= factorial(t)
                opts.append((combo, w))
        per_coord.append(opts)
    out = []
    for choice in _cartesian(*per_coord):
        w = 1
        for _, cw in choice:
            w *= cw
        gammas = tuple(tuple(choice[i][0][p] for i in range(len(alpha))) for p in range(parts))
        out.append((gammas, w))
    return tuple(out)


def compose(outer: Cochain, slot: int, inner: Cochain, max_order=None) -> Cochain:
    """``outer(f_1, ..., inner(g_1, ..., g_n), ..., f_k)`` with the inner result in ``slot``."""
    if outer.dim != inner.dim:
        raise ValueError("cochain dimension mismatch")
    if not 0 <= slot < outer.arity:
        raise ValueError("slot out of range")
    n = inner.arity
    prec = _min_prec(max_order, None)
    lo_o = outer.lowest_order() or 0
    lo_i = inner.lowest_order() or 0
    if outer.precision is not None:
        prec = _min_prec(prec, outer.precision + lo_i)
    if inner.precision is not None:
        prec = _min_prec(prec, inner.precision + lo_o)
    out: dict = {}
    inner_items = [(l2, bs, g2, g2.degree()) for (l2, bs), g2 in inner.terms.items()]
    diff_cache: dict = {}
    for (l1, alphas), g1 in outer.terms.items():
        alpha = alphas[slot]
        before, after = alphas[:slot], alphas[slot + 1:]
        splits = _splits(alpha, n + 1)
        for l2, bs, g2, deg2 in inner_items:
            l = l1 + l2
            if prec is not None and l > prec:
                continue
            for gammas, w in splits:
                g0 = gammas[0]
                if sum(g0) > deg2:
                    continue
                key2 = (id(g2), g0)
                dg = diff_cache.get(key2)
                if dg is None:
                    dg = diff_cache[key2] = (g2.diff_multi(g0), g2)
                dg = dg[0]
                if not dg:
                    continue
                coef = (g1 * dg).scale(w)
                if not coef:
                    continue
                mids = tuple(tuple(p + q for p, q in zip(b, gm)) for b, gm in zip(bs, gammas[1:]))
                key = (l, before + mids + after)
                old = out.get(key)
                if old is not None:
                    coef = old + coef
                    if not coef:
                        del out[key]
                        continue
                out[key] = coef
    return Cochain._wrap(outer.arity + n - 1, outer.dim, out, prec)


def coboundary(c: Cochain, table: StarProductTable, N: int | None = None, tilde: bool = False) -> Cochain:
    """``b c = (i/hbar) b~ c`` with the alternating Hochschild formula.

    The result carries the hbar order through which it is exact: the table is
    known through ``hbar^N`` and ``c`` through ``c.precision``.
    """
    if N is None:
        N = table.order
    if N > table.order:
        raise ValueError(f"table known through hbar^{table.order}, {N} requested")
    if c.dim != table.dim:
        raise ValueError("cochain and table dimensions differ")
    starc = Cochain.from_table(table).with_precision(N)
    lo = c.lowest_order()
    lo = 0 if lo is None else lo
    prec = _min_prec(c.precision, N + lo)
    k = c.arity
    total = compose(starc, 1, c, prec)
    for i in range(k):
        term = compose(c, i, starc, prec)
        total = total - term if i % 2 == 0 else total + term
    last = compose(starc, 0, c, prec)
    total = total + last if (k + 1) % 2 == 0 else total - last
    # every piece is padded to the common arity k+1 and precision
    total = total.with_precision(prec)
    if tilde:
        return total
    return total.shift(-1).scale(I)


def derivative_cocycle(table: StarProductTable) -> Cochain:
    """``c(f, g) = d/dhbar (f * g) = sum_k k hbar^{k-1} C_k(f, g)``."""
    terms = {}
    for k, ck in enumerate(table.C):
        if k == 0:
            continue
        for (a, b), g in ck.items():
            terms[(k - 1, (a, b))] = g.scale(k)
    return Cochain._wrap(2, table.dim, terms, table.order - 1)


def _monomial_tuples(dim: int, degree: int, arity: int) -> list:
    mons = [BasePoly.monomial(e) for e in monomials_up_to(dim, degree)]
    return list(_cartesian(mons, repeat=arity))


def cochain_residual(c: Cochain, degree: int, through: int | None = None, check: str = "cochain",
                     limit: int = 20) -> dict:
    """Evaluate ``c`` on all monomial tuples up to ``degree``; report nonzero values."""
    through = c.precision if through is None else through
    if c.precision is not None and through is not None and through > c.precision:
        raise ValueError(f"cochain only known through hbar^{c.precision}, asked for {through}")
    bad = []
    count = 0
    if c.arity == 0:
        tuples = [()]
    else:
        tuples = _monomial_tuples(c.dim, degree, c.arity)
    for args in tuples:
        val = apply_cochain(c, args)
        if through is not None:
            val = val.truncate(through)
        if val:
            count += 1
            if len(bad) < limit:
                low = min(val.orders())
                bad.append({"args": [list(next(iter(a.terms))) for a in args],
                            "hbar": low, "value": val.coeff(low).to_json()})
    return {"check": check, "max_hbar_order": through, "nonzero": count, "residual_terms": bad,
            "ok": count == 0}


def _hbar_euler(s: PolySeries) -> PolySeries:
    return PolySeries._wrap(s.dim, {(k, x): c * k for (k, x), c in s.terms.items() if k})


def liouville_check(X: Cochain, table: StarProductTable, testdeg: int, N: int | None = None,
                    limit: int = 20) -> dict:
    """``R(f, g) = (hbar d/dhbar + X)(f*g) - (..)f * g - f * (..)g`` on monomial pairs through ``hbar^N``."""
    if X.arity != 1:
        raise ValueError("a Liouville candidate is a 1-cochain")
    N = table.order if N is None else N
    if N > table.order:
        raise ValueError("table order too small")
    Xe = X.truncate(N)
    mons = [BasePoly.monomial(e) for e in monomials_up_to(table.dim, testdeg)]
    images = {}
    for f in mons:
        images[id(f)] = apply_cochain(Xe, [f]).truncate(N)
    bad = []
    count = 0
    for f in mons:
        for g in mons:
            fg = table.apply(f, g)
            r = _hbar_euler(fg) + apply_cochain(Xe, [fg])
            r = r - table.apply(images[id(f)], g) - table.apply(f, images[id(g)])
            r = r.truncate(N)
            if r:
                count += 1
                if len(bad) < limit:
                    low = min(r.orders())
                    bad.append({"args": [list(next(iter(f.terms))), list(next(iter(g.terms)))],
                                "hbar": low, "value": r.coeff(low).to_json()})
    return {"check": "liouville", "max_hbar_order": N, "nonzero": count, "residual_terms": bad,
            "ok": count == 0}


def fit_liouville_constant(X: Cochain, table: StarProductTable, degree: int = 2):
    """The scalar ``lam`` with ``b X = lam * c`` (c the derivative cocycle), or None.

    ``lam`` is read off the lowest-order slice and then demanded on every
    monomial pair through the common precision.
    """
    bX = coboundary(X, table)
    c = derivative_cocycle(table)
    through = _min_prec(bX.precision, c.precision)
    lam = None
    pairs = _monomial_tuples(table.dim, degree, 2)
    for args in pairs:
        cv = apply_cochain(c, args).truncate(through)
        if not cv:
            continue
        bv = apply_cochain(bX, args).truncate(through)
        low = min(cv.orders())
        x, cval = next(iter(sorted(cv.coeff(low).terms.items())))
        lam = bv.coeff(low).terms.get(x, ZERO) / cval
        break
    if lam is None:
        return None
    for args in pairs:
        if (apply_cochain(bX, args) - apply_cochain(c, args).scale(lam)).truncate(through):
            return None
    return lam


# ---------------------------------------------------------------------------
# trivializer


def _b0_solve(s: dict, dim: int) -> dict:
    """Solve ``b_0 T = s`` for a differential operator ``T``; ``s`` maps ``(a, b)`` to polys.

    ``b_0 T(f, g) = f T g - T(fg) + (T f) g``; for ``T = t d^alpha`` this is
    ``-sum_{0<gamma<alpha} C(alpha, gamma) d^gamma f d^{alpha-gamma} g``, and
    ``t f g`` for ``alpha = 0``.
    """
    system = SparseSystem()
    zero = (0,) * dim
    for (a, b), poly in sorted(s.items(), key=lambda t: (glex_key(t[0][0]), glex_key(t[0][1]))):
        if (a == zero) != (b == zero):
            raise TrivializationError(f"term d^{a} (x) d^{b} is not in the image of b_0")
        alpha = tuple(p + q for p, q in zip(a, b))
        w = 1 if a == zero else -1
        for t in range(dim):
            w *= comb(alpha[t], a[t]) if a != zero else 1
        monos = set(poly.terms)
        for x in monos:
            if not system.add({(alpha, x): Scalar(w)}, poly.terms[x]):
                raise TrivializationError("b_0 T = s has no solution (s is not symmetric)")
    sol = system.solution()
    out: dict = {}
    for (alpha, x), v in sol.items():
        out.setdefault(alpha, {})[x] = v
    return {alpha: BasePoly._wrap(dim, t) for alpha, t in out.items()}


def _bivector_to_field(A: dict, P) -> dict:
    """Vector field ``X`` with ``(i b_1 X)`` equal to the bivector ``A``.

    ``beta = 2 omega A omega`` is closed and equals ``d theta``; ``X^k = theta_j pi^{jk}``.
    """
    dim = P.dim
    omega = P.omega
    comps: dict = {}
    zero = BasePoly(dim)
    for m in range(dim):
        for n in range(m + 1, dim):
            acc = zero
            for a in range(dim):
                for b in range(dim):
                    w = omega[m][a] * omega[b][n]
                    if w and (a, b) in A:
                        acc = acc + A[(a, b)].scale(w * 2)
            if acc:
                comps[(m, n)] = acc
    beta = ScalarFormSeries.from_components(dim, comps)
    try:
        theta = euler_homotopy(beta)
    except NotClosedError as exc:
        raise TrivializationError("antisymmetric part is not Poisson-closed") from exc
    th = theta.components(0)
    field: dict = {}
    for j in range(dim):
        tj = th.get((j,))
        if tj is None:
            continue
        for k in range(dim):
            c = P.pi[j][k]
            if c:
                acc = field.get(k, zero) + tj.scale(c)
                if acc:
                    field[k] = acc
                else:
                    field.pop(k, None)
    return field


def trivialize_on_flat(c: Cochain, table: StarProductTable, P, N: int | None = None,
                       max_steps: int = 64) -> Cochain:
    """A 1-cochain ``H`` with ``b H = c`` through the common precision.

    Each step takes the lowest surviving order ``l`` of ``c - bH``, splits it
    as ``b_0 T + c'`` with ``c'`` a bivector, adds ``-i hbar^{l+1} T`` and the
    vector field ``hbar^l X`` transported from ``c'``, and checks that order
    ``l`` is now cancelled.
    """
    if c.arity != 2:
        raise ValueError("trivialize_on_flat takes a 2-cochain")
    P.require_symplectic()
    dim = table.dim
    N = table.order if N is None else N
    H = Cochain.zero(1, dim)
    last = None
    for _ in range(max_steps):
        bH = coboundary(H, table, N) if H.terms else Cochain.zero(2, dim, N - 1)
        r = c - bH
        if not r.terms:
            return H
        l = r.lowest_order()
        if last is not None and l <= last:
            raise TrivializationError(f"order {l} was not cancelled")
        last = l
        rl = r.coefficient(l)
        A: dict = {}
        for (a, b), g in rl.items():
            if sum(a) == 1 and sum(b) == 1:
                i, j = a.index(1), b.index(1)
                A[(i, j)] = A.get((i, j), BasePoly(dim)) + g.scale(Scalar(1, 0) / 2)
                A[(j, i)] = A.get((j, i), BasePoly(dim)) - g.scale(Scalar(1, 0) / 2)
        A = {key: g for key, g in A.items() if g}
        s = dict(rl)
        for (i, j), g in A.items():
            key = (unit_exp(dim, i), unit_exp(dim, j))
            new = s.get(key, BasePoly(dim)) - g
            if new:
                s[key] = new
            else:
                s.pop(key, None)
        step = Cochain.zero(1, dim)
        if s:
            T = _b0_solve(s, dim)
            step = step + Cochain._wrap(1, dim, {(l + 1, (alpha,)): p.scale(-I) for alpha, p in T.items()})
        if A:
            field = _bivector_to_field(A, P)
            step = step + Cochain.vector_field(dim, field, hbar=l)
        H = H + step
        check = (c - coboundary(H, table, N)).coefficient(l)
        if check:
            raise TrivializationError(f"step at hbar^{l} did not cancel the residual")
    raise TrivializationError("trivializer did not converge")


# ---------------------------------------------------------------------------
# candidate search


def search_liouville_candidate(table: StarProductTable, testdeg: int = 2, max_hbar: int = 1,
                               max_order: int = 2, coeff_degree: int = 2, periodic=(),
                               through: int | None = None):
    """Look for a 1-cochain ``X`` (coefficients independent of ``periodic``
    coordinates) making ``hbar d/dhbar + X`` a derivation through ``hbar^through``.

    Returns ``(X or None, info)``.  The search is an exact sparse linear solve.
    """
    dim = table.dim
    through = min(table.order, max_hbar + 1) if through is None else through
    allowed = [t for t in range(dim) if t not in set(periodic)]
    coeff_monos = [m for m in monomials_up_to(dim, coeff_degree)
                   if all(m[t] == 0 for t in periodic)]
    alphas = monomials_up_to(dim, max_order)
    unknowns = [(l, a, m) for l in range(max_hbar + 1) for a in alphas for m in coeff_monos]
    mons = [BasePoly.monomial(e) for e in monomials_up_to(dim, testdeg)]
    rows: dict = {}
    rhs: dict = {}
    tr = table

    def add(rowkey, var, val):
        row = rows.setdefault(rowkey, {})
        v = row.get(var, ZERO) + val
        if v:
            row[var] = v
        else:
            row.pop(var, None)

    for fi, f in enumerate(mons):
        for gi, g in enumerate(mons):
            fg = tr.apply(f, g).truncate(through)
            for (k, x), v in _hbar_euler(fg).terms.items():
                rhs[((fi, gi), k, x)] = rhs.get(((fi, gi), k, x), ZERO) - v
                rows.setdefault(((fi, gi), k, x), {})
            for var in unknowns:
                l, a, m = var
                op = Cochain._wrap(1, dim, {(l, (a,)): BasePoly.monomial(m)})
                val = apply_cochain(op, [fg])
                val = val - tr.apply(apply_cochain(op, [f]), g) - tr.apply(f, apply_cochain(op, [g]))
                for (k, x), v in val.truncate(through).terms.items():
                    add(((fi, gi), k, x), var, v)
    system = SparseSystem()
    for rowkey in sorted(rows, key=repr):
        system.add(rows[rowkey], rhs.get(rowkey, ZERO))
        if not system.consistent:
            break
    info = {"unknowns": len(unknowns), "equations": len(rows), "through": through,
            "max_hbar": max_hbar, "max_order": max_order, "coeff_degree": coeff_degree,
            "periodic": list(periodic), "feasible": system.consistent}
    if not system.consistent:
        return None, info
    sol = system.solution()
    terms = {}
    for (l, a, m), v in sol.items():
        key = (l, (a,))
        terms[key] = terms.get(key, BasePoly(dim)) + BasePoly.monomial(m, v)
    return Cochain(1, dim, terms), info
